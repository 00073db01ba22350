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

#include "sidecar_client.h"

#include "httplib.h"

namespace kbmap {

namespace {

httplib::Client make_client(const std::string& base_url,
                            std::chrono::seconds timeout) {
  httplib::Client client(base_url);
  if (!client.is_valid()) {
    throw SidecarError("invalid sidecar url '" + base_url + "'");
  }
  client.set_connection_timeout(std::chrono::seconds(10));
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  return client;
}

nlohmann::json decode(const httplib::Result& result, const std::string& what) {
  if (!result) {
    throw SidecarError(what + ": " + httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    throw SidecarError(what + ": HTTP " + std::to_string(result->status) +
                       " " + result->body);
  }
  try {
    return nlohmann::json::parse(result->body);
  } catch (const nlohmann::json::exception& e) {
    throw SidecarError(what + ": malformed JSON response: " + e.what());
  }
}

}  // namespace

nlohmann::json sidecar_post(const std::string& base_url,
                            const std::string& path,
                            const nlohmann::json& body,
                            std::chrono::seconds timeout) {
  auto client = make_client(base_url, timeout);
  auto result = client.Post(path, body.dump(), "application/json");
  return decode(result, "POST " + path);
}

nlohmann::json sidecar_get(const std::string& base_url, const std::string& path,
                           std::chrono::seconds timeout) {
  auto client = make_client(base_url, timeout);
  auto result = client.Get(path);
  return decode(result, "GET " + path);
}

}  // namespace kbmap
