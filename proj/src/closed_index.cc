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

#include "kbmap/closed_index.h"

namespace kbmap {

std::string ClosedIndex::so_key(std::string_view subject_key,
                                std::string_view object_key) {
  std::string key;
  key.reserve(subject_key.size() + object_key.size() + 1);
  key.append(subject_key);
  key.push_back('\t');
  key.append(object_key);
  return key;
}

ClosedIndex ClosedIndex::build(const ClosedKB& kb,
                               const Normalizer& normalizer) {
  ClosedIndex index;
  index.triples_ = kb.triples;
  for (std::size_t i = 0; i < kb.triples.size(); ++i) {
    const std::string s = normalizer.normalize(kb.triples[i].subject).render();
    const std::string o = normalizer.normalize(kb.triples[i].object).render();
    index.by_so_[so_key(s, o)].push_back(i);
    index.by_s_[s].push_back(i);
  }
  return index;
}

std::span<const std::size_t> ClosedIndex::by_so(
    std::string_view subject_key, std::string_view object_key) const {
  auto it = by_so_.find(so_key(subject_key, object_key));
  if (it == by_so_.end()) return {};
  return it->second;
}

std::span<const std::size_t> ClosedIndex::by_s(
    std::string_view subject_key) const {
  auto it = by_s_.find(std::string(subject_key));
  if (it == by_s_.end()) return {};
  return it->second;
}

}  // namespace kbmap
