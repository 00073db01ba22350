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

#include "kbmap/embedding.h"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "kbmap/normalize.h"
#include "kbmap/text.h"
#include "sidecar_client.h"

namespace kbmap {

MockEmbeddingProvider::MockEmbeddingProvider(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw std::invalid_argument("embedding dim must be > 0");
}

std::vector<Embedding> MockEmbeddingProvider::embed(
    std::span<const std::string> texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    Embedding v(dim_, 0.0);
    for (const std::string& token : tokenize(text)) {
      const std::uint64_t h = fnv1a64(token);
      v[h % dim_] += ((h >> 63) != 0u) ? -1.0 : 1.0;
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    if (norm == 0) {
      // Tokens may cancel out as well as be absent.
      v.assign(dim_, 0.0);
      v[0] = 1.0;
    } else {
      norm = std::sqrt(norm);
      for (double& x : v) x /= norm;
    }
    out.push_back(std::move(v));
  }
  return out;
}

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string base_url,
                                             std::chrono::seconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

std::vector<Embedding> HttpEmbeddingProvider::embed(
    std::span<const std::string> texts) const {
  nlohmann::json request;
  request["texts"] = nlohmann::json::array();
  for (const std::string& t : texts) request["texts"].push_back(t);
  const nlohmann::json response =
      sidecar_post(base_url_, "/embed", request, timeout_);

  if (!response.contains("embeddings") || !response["embeddings"].is_array()) {
    throw SidecarError("/embed response lacks an embeddings array");
  }
  const auto& rows = response["embeddings"];
  if (rows.size() != texts.size()) {
    throw SidecarError("/embed returned " + std::to_string(rows.size()) +
                       " vectors for " + std::to_string(texts.size()) +
                       " texts");
  }
  const std::size_t dim =
      response.contains("dim") ? response["dim"].get<std::size_t>() : 0;
  std::vector<Embedding> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    Embedding v = row.get<Embedding>();
    if (dim != 0 && v.size() != dim) {
      throw SidecarError("/embed vector has dimension " +
                         std::to_string(v.size()) + ", expected " +
                         std::to_string(dim));
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    if (std::abs(std::sqrt(norm) - 1.0) > kWireNormTolerance) {
      throw SidecarError("/embed vector is not unit norm");
    }
    out.push_back(std::move(v));
  }
  return out;
}

SidecarHealth fetch_sidecar_health(const std::string& base_url) {
  const auto j = sidecar_get(base_url, "/health", std::chrono::seconds(10));
  SidecarHealth health;
  health.embedder = j.value("embedder", "");
  health.generator = j.value("generator", "");
  health.dim = j.value("dim", std::size_t{0});
  return health;
}

}  // namespace kbmap
