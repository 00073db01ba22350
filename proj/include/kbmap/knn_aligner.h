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

// Embedding-based alignment: every source triple is paired with its single
// nearest target triple (exact search, cosine distance) and the globally
// closest pairs are kept.

#pragma once

#include <cstddef>
#include <span>

#include "kbmap/alignment.h"
#include "kbmap/embedding.h"
#include "kbmap/triple.h"

namespace kbmap {

enum class AlignDirection {
  kOpenToClosed,
  kClosedToOpen,  // "inverse": each closed triple picks one open triple
};

struct KnnOptions {
  AlignDirection direction = AlignDirection::kOpenToClosed;
  std::size_t top_k = 10000;
  std::size_t batch_size = 64;    // texts per embedding request
  std::size_t max_in_flight = 1;  // concurrent embedding requests
};

// 1 - <a, b> clamped at 0. Both vectors must have the same dimension.
double cosine_distance(std::span<const double> a, std::span<const double> b);

// Output is sorted by distance ascending, ties by lower source index then
// lower target index, and truncated to top_k. Serialized texts that are
// identical get distance exactly 0. Each distinct text is embedded once.
// Throws InvalidInput on empty KBs or top_k == 0; provider failures surface
// as BatchError naming the failing batch.
AlignmentSet knn_align(const OpenKB& open_kb, const ClosedKB& closed_kb,
                       const EmbeddingProvider& provider,
                       const KnnOptions& options);

}  // namespace kbmap
