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

#include <chrono>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace kbmap {

class SidecarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One request per call with a fresh connection, so concurrent callers never
// share client state. Non-2xx responses and malformed JSON raise
// SidecarError.
nlohmann::json sidecar_post(const std::string& base_url, const std::string& path,
                            const nlohmann::json& body,
                            std::chrono::seconds timeout);
nlohmann::json sidecar_get(const std::string& base_url, const std::string& path,
                           std::chrono::seconds timeout);

}  // namespace kbmap
