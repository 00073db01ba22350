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

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "kbmap/text.h"

namespace kbmap {

// Splits "a, b, c" at the first and last ", ". Fields are trimmed but may
// be empty. Returns nullopt with fewer than two delimiters.
inline std::optional<std::array<std::string, 3>> split_triple_text(
    std::string_view text) {
  constexpr std::string_view kDelim = ", ";
  const std::size_t first = text.find(kDelim);
  if (first == std::string_view::npos) return std::nullopt;
  const std::size_t last = text.rfind(kDelim);
  if (last == first) return std::nullopt;
  return std::array<std::string, 3>{
      std::string(trim(text.substr(0, first))),
      std::string(trim(text.substr(first + kDelim.size(),
                                   last - first - kDelim.size()))),
      std::string(trim(text.substr(last + kDelim.size())))};
}

// Text after the last occurrence of `sep`, or all of `text`.
inline std::string_view after_last(std::string_view text,
                                   std::string_view sep) {
  const std::size_t pos = text.rfind(sep);
  if (pos == std::string_view::npos) return text;
  return text.substr(pos + sep.size());
}

// Text before the last occurrence of `sep`, or all of `text`.
inline std::string_view before_last(std::string_view text,
                                    std::string_view sep) {
  const std::size_t pos = text.rfind(sep);
  if (pos == std::string_view::npos) return text;
  return text.substr(0, pos);
}

}  // namespace kbmap
