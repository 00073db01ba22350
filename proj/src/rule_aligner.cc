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

#include "kbmap/rule_aligner.h"

#include <array>
#include <set>
#include <utility>

namespace kbmap {

AlignmentSet align_rule_based(const OpenKB& open_kb, const ClosedIndex& index,
                              const Normalizer& normalizer) {
  AlignmentSet out;
  out.provenance = "method=rule patterns=standard,reverse,pred_in_obj,"
                   "reverse_pred_in_obj";
  std::set<std::pair<OpenTriple, std::size_t>> emitted;

  for (const OpenTriple& t : open_kb.triples) {
    const std::string s = normalizer.normalize(t.subject).render();
    const std::string o = normalizer.normalize(t.object).render();
    const std::string po =
        normalizer.normalize(t.predicate + " " + t.object).render();

    const std::array<std::pair<AlignPattern, std::pair<const std::string*,
                                                       const std::string*>>,
                     4>
        probes = {{{AlignPattern::kStandard, {&s, &o}},
                   {AlignPattern::kReverse, {&o, &s}},
                   {AlignPattern::kPredInObject, {&s, &po}},
                   {AlignPattern::kReversePredInObject, {&po, &s}}}};

    for (const auto& [pattern, keys] : probes) {
      if (keys.first->empty() || keys.second->empty()) continue;
      for (std::size_t i : index.by_so(*keys.first, *keys.second)) {
        if (!emitted.emplace(t, i).second) continue;
        out.alignments.push_back(Alignment::rule(t, index.triple(i), pattern));
      }
    }
  }
  return out;
}

}  // namespace kbmap
