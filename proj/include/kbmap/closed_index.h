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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kbmap/normalize.h"
#include "kbmap/triple.h"

namespace kbmap {

// Lookup tables over a closed KB keyed on normalized phrases. Keys are
// NormalizedPhrase::render() strings; the (subject, object) key joins the two
// with a tab. Postings are indices into triples(), ascending, so iteration
// follows closed-KB input order.
class ClosedIndex {
 public:
  static ClosedIndex build(const ClosedKB& kb,
                           const Normalizer& normalizer = Normalizer::builtin());

  std::span<const std::size_t> by_so(std::string_view subject_key,
                                     std::string_view object_key) const;
  std::span<const std::size_t> by_s(std::string_view subject_key) const;

  const std::vector<ClosedTriple>& triples() const { return triples_; }
  const ClosedTriple& triple(std::size_t i) const { return triples_[i]; }
  std::size_t size() const { return triples_.size(); }

  static std::string so_key(std::string_view subject_key,
                            std::string_view object_key);

 private:
  std::vector<ClosedTriple> triples_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_so_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_s_;
};

inline ClosedIndex index_closed_kb(const ClosedKB& kb) {
  return ClosedIndex::build(kb);
}

}  // namespace kbmap
