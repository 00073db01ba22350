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

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kbmap/alignment.h"

namespace kbmap {

// Uniform integer in [0, n) from a 64-bit Mersenne Twister, by rejection of
// the biased tail. Unlike std::uniform_int_distribution the sequence is
// fixed across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

// Fisher-Yates: for i = n-1 down to 1, swap v[i] with v[uniform_below(i+1)].
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

// Alignments are grouped by open triple (subject, predicate, object); the
// groups are shuffled with `seed` and the first ceil(ratio * groups) go to
// train. Each side keeps the input order. Throws InvalidInput when the set
// is empty or ratio is outside (0, 1).
std::pair<AlignmentSet, AlignmentSet> split_alignments(const AlignmentSet& set,
                                                       double ratio,
                                                       std::uint64_t seed);

// One format_training_example line per alignment, shuffled with `seed`.
std::vector<std::string> training_lines(const AlignmentSet& set,
                                        std::uint64_t seed);

}  // namespace kbmap
