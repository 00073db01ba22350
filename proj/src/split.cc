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

#include "kbmap/split.h"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "kbmap/translator.h"

namespace kbmap {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw InvalidInput("uniform_below(0)");
  // Largest multiple of n that fits; draws at or above it are redrawn.
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % n + 1) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % n;
}

std::pair<AlignmentSet, AlignmentSet> split_alignments(const AlignmentSet& set,
                                                       double ratio,
                                                       std::uint64_t seed) {
  if (set.empty()) throw InvalidInput("cannot split an empty alignment set");
  if (!(ratio > 0 && ratio < 1)) {
    throw InvalidInput("split ratio must be in (0, 1)");
  }
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::size_t> group_of;
  std::vector<std::size_t> group(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const OpenTriple& t = set.alignments[i].open;
    group[i] = group_of.try_emplace({t.subject, t.predicate, t.object},
                                    group_of.size())
                   .first->second;
  }
  const std::size_t n = group_of.size();
  std::vector<std::size_t> order(n);
  for (std::size_t g = 0; g < n; ++g) order[g] = g;
  seeded_shuffle(order, seed);
  // The epsilon keeps 0.9 * 10 from rounding up to 10.
  const auto n_train = static_cast<std::size_t>(
      std::ceil(ratio * static_cast<double>(n) - 1e-9));
  std::vector<bool> is_train(n, false);
  for (std::size_t i = 0; i < n_train && i < n; ++i) is_train[order[i]] = true;

  AlignmentSet train, test;
  train.provenance = set.provenance;
  test.provenance = set.provenance;
  for (std::size_t i = 0; i < set.size(); ++i) {
    (is_train[group[i]] ? train : test).alignments.push_back(set.alignments[i]);
  }
  return {std::move(train), std::move(test)};
}

std::vector<std::string> training_lines(const AlignmentSet& set,
                                        std::uint64_t seed) {
  std::vector<std::string> lines;
  lines.reserve(set.size());
  for (const Alignment& a : set.alignments) {
    lines.push_back(format_training_example(a));
  }
  seeded_shuffle(lines, seed);
  return lines;
}

}  // namespace kbmap
