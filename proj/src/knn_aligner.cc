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

#include "kbmap/knn_aligner.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kbmap/batching.h"

namespace kbmap {

namespace {

// Rows of source ids compared against a block of target ids at a time.
constexpr std::size_t kTargetBlock = 256;

struct Match {
  double distance;
  std::size_t source;
  std::size_t target;
};

// Interns texts so each distinct string is embedded once.
class TextTable {
 public:
  std::size_t intern(std::string text) {
    auto [it, inserted] = ids_.emplace(text, texts_.size());
    if (inserted) texts_.push_back(std::move(text));
    return it->second;
  }
  const std::vector<std::string>& texts() const { return texts_; }

 private:
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<std::string> texts_;
};

std::vector<Embedding> embed_all(const std::vector<std::string>& texts,
                                 const EmbeddingProvider& provider,
                                 const KnnOptions& options) {
  auto chunks = run_batches<std::vector<Embedding>>(
      texts.size(), options.batch_size, options.max_in_flight,
      [&](std::size_t begin, std::size_t end) {
        auto span = std::span<const std::string>(texts).subspan(begin,
                                                               end - begin);
        auto vectors = provider.embed(span);
        if (vectors.size() != span.size()) {
          throw std::runtime_error("provider returned " +
                                   std::to_string(vectors.size()) +
                                   " vectors for " +
                                   std::to_string(span.size()) + " texts");
        }
        return vectors;
      });
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (auto& chunk : chunks) {
    for (auto& v : chunk) out.push_back(std::move(v));
  }
  const std::size_t dim = out.empty() ? 0 : out.front().size();
  for (const auto& v : out) {
    if (v.size() != dim) {
      throw std::runtime_error("embedding dimensions are inconsistent");
    }
  }
  return out;
}

}  // namespace

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  double dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::max(0.0, 1.0 - dot);
}

AlignmentSet knn_align(const OpenKB& open_kb, const ClosedKB& closed_kb,
                       const EmbeddingProvider& provider,
                       const KnnOptions& options) {
  if (open_kb.triples.empty() || closed_kb.triples.empty()) {
    throw InvalidInput("k-NN alignment needs nonempty open and closed KBs");
  }
  if (options.top_k == 0) throw InvalidInput("top_k must be positive");
  const bool inverse = options.direction == AlignDirection::kClosedToOpen;

  TextTable table;
  std::vector<std::size_t> open_ids, closed_ids;
  open_ids.reserve(open_kb.triples.size());
  closed_ids.reserve(closed_kb.triples.size());
  for (const auto& t : open_kb.triples) {
    open_ids.push_back(table.intern(serialize_triple(t)));
  }
  for (const auto& t : closed_kb.triples) {
    closed_ids.push_back(table.intern(serialize_triple(t)));
  }
  const std::vector<Embedding> vectors =
      embed_all(table.texts(), provider, options);

  const std::vector<std::size_t>& source_ids = inverse ? closed_ids : open_ids;
  const std::vector<std::size_t>& target_ids = inverse ? open_ids : closed_ids;

  // Nearest target per source; sources are processed in parallel blocks.
  auto blocks = run_batches<std::vector<Match>>(
      source_ids.size(), 64, options.max_in_flight,
      [&](std::size_t begin, std::size_t end) {
        std::vector<Match> best(end - begin,
                                {std::numeric_limits<double>::infinity(), 0,
                                 std::numeric_limits<std::size_t>::max()});
        for (std::size_t t0 = 0; t0 < target_ids.size(); t0 += kTargetBlock) {
          const std::size_t t1 = std::min(target_ids.size(), t0 + kTargetBlock);
          for (std::size_t s = begin; s < end; ++s) {
            Match& m = best[s - begin];
            m.source = s;
            const std::size_t sid = source_ids[s];
            for (std::size_t t = t0; t < t1; ++t) {
              const std::size_t tid = target_ids[t];
              const double d =
                  sid == tid ? 0.0 : cosine_distance(vectors[sid], vectors[tid]);
              if (d < m.distance) {
                m.distance = d;
                m.target = t;
              }
            }
          }
        }
        return best;
      });

  std::vector<Match> matches;
  matches.reserve(source_ids.size());
  for (auto& block : blocks) {
    matches.insert(matches.end(), block.begin(), block.end());
  }
  std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  });
  if (matches.size() > options.top_k) matches.resize(options.top_k);

  AlignmentSet out;
  out.provenance = std::string("method=") + (inverse ? "embed-inv" : "embed") +
                   " top_k=" + std::to_string(options.top_k);
  out.alignments.reserve(matches.size());
  for (const Match& m : matches) {
    const OpenTriple& open =
        open_kb.triples[inverse ? m.target : m.source];
    const ClosedTriple& closed =
        closed_kb.triples[inverse ? m.source : m.target];
    out.alignments.push_back(Alignment::embed(open, closed, m.distance, inverse));
  }
  return out;
}

}  // namespace kbmap
