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
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace kbmap {

using Embedding = std::vector<double>;

// Maps texts to unit-norm vectors of a fixed dimension. Implementations must
// be safe to call from several threads at once and must return one vector
// per input text, in input order.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<Embedding> embed(
      std::span<const std::string> texts) const = 0;
};

// Deterministic stand-in for a sentence embedder: hashed bag of words.
// Each token adds +-1 to a bucket chosen by its FNV-1a hash; the result is
// L2-normalized. Text without tokens maps to the first basis vector.
class MockEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit MockEmbeddingProvider(std::size_t dim = 64);
  std::vector<Embedding> embed(
      std::span<const std::string> texts) const override;
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
};

struct SidecarHealth {
  std::string embedder;
  std::string generator;
  std::size_t dim = 0;
};

// Client for the model sidecar's embedding endpoint:
//   POST /embed  {"texts":[...]}  ->  {"embeddings":[[...],...],"dim":d}
// `base_url` is scheme://host:port, e.g. "http://127.0.0.1:8765".
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(
      std::string base_url,
      std::chrono::seconds timeout = std::chrono::seconds(300));
  std::vector<Embedding> embed(
      std::span<const std::string> texts) const override;

 private:
  std::string base_url_;
  std::chrono::seconds timeout_;
};

// GET /health -> {"embedder":...,"generator":...,"dim":d}
SidecarHealth fetch_sidecar_health(const std::string& base_url);

// Tolerance on the norm of vectors received over the wire.
inline constexpr double kWireNormTolerance = 1e-4;

}  // namespace kbmap
