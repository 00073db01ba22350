// Copyright 2026 The kbmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small string helpers shared across the library.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kbmap {

std::string_view trim(std::string_view text);

// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string ascii_lower(std::string_view text);

// Splits on every occurrence of `sep`, keeping empty fields.
std::vector<std::string_view> split(std::string_view text, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);

// FNV-1a, 64 bit. Stable across platforms, used for hashing in mocks.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace kbmap
