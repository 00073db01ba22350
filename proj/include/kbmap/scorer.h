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

// Corroboration scoring. A closed triple produced from several open triples
// accumulates one term per producer:
//
//   combined     sum score(t') / (rank(t', t) + 1)
//   weight_only  sum score(t')
//   rank_only    sum 1 / (rank(t', t) + 1)
//
// where score(t') is the open triple's KB score and rank is 0-based.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "kbmap/translator.h"
#include "kbmap/triple.h"

namespace kbmap {

enum class ScoreMode { kCombined, kWeightOnly, kRankOnly };

std::string_view to_string(ScoreMode mode);
ScoreMode parse_score_mode(std::string_view text);

struct Contribution {
  double open_score = 1.0;
  int rank = 0;

  friend auto operator<=>(const Contribution&, const Contribution&) = default;
};

// Throws InvalidInput on an empty list, a negative rank or a negative score.
// Terms are summed in sorted order so the result does not depend on the
// order of `contribs`.
double final_score(std::span<const Contribution> contribs, ScoreMode mode);

struct ScoredClosedTriple {
  ClosedTriple triple;
  double final_score = 0;
  std::size_t support = 0;
};

// Entries by descending score; equal scores fall back to (subject, relation,
// object) ascending.
struct RankedKB {
  std::vector<ScoredClosedTriple> entries;
  ScoreMode mode = ScoreMode::kCombined;

  std::size_t size() const { return entries.size(); }
};

// Groups by the exact triple and scores each group.
RankedKB aggregate(const std::vector<Generation>& generations, ScoreMode mode);
RankedKB aggregate_contributions(
    const std::vector<std::pair<ClosedTriple, Contribution>>& items,
    ScoreMode mode);

// TSV: subject<TAB>relation<TAB>object<TAB>final_score<TAB>support
void write_ranked_kb(const RankedKB& kb, std::ostream& out);
void save_ranked_kb(const RankedKB& kb, const std::filesystem::path& path);
RankedKB load_ranked_kb(const std::filesystem::path& path);

}  // namespace kbmap
