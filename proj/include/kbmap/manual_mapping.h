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

// Baseline: a hand-written predicate -> relation table. Predicates missing
// from the table can fall back to (s, CapableOf, p o).

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kbmap/normalize.h"
#include "kbmap/scorer.h"
#include "kbmap/triple.h"

namespace kbmap {

struct ManualEntry {
  std::string relation;
  bool inverted = false;
};

class ManualTable {
 public:
  // Keys are the lemmatized predicate tokens (stopwords kept), so "lives in"
  // and "live in" share an entry while "be" and "be in" do not. Relations must be in `schema`; an inverted entry additionally
  // needs the relation's inverse marker when the schema declares any.
  // Throws InvalidInput otherwise.
  ManualTable(const std::map<std::string, ManualEntry>& entries,
              const RelationSchema& schema,
              std::string fallback_relation = "CapableOf",
              const Normalizer& normalizer = Normalizer::builtin());

  const ManualEntry* find(const std::string& predicate) const;
  const std::string& fallback_relation() const { return fallback_; }
  std::size_t size() const { return entries_.size(); }
  const Normalizer& normalizer() const { return *normalizer_; }

 private:
  std::map<std::string, ManualEntry> entries_;
  std::string fallback_;
  const Normalizer* normalizer_;
};

// TSV: predicate<TAB>relation[<TAB>inv]
ManualTable parse_manual_table(std::istream& in, const RelationSchema& schema,
                               std::string fallback_relation = "CapableOf");
ManualTable load_manual_table(const std::filesystem::path& path,
                              const RelationSchema& schema,
                              std::string fallback_relation = "CapableOf");

// At most one triple. A table hit whose result has subject == object
// (normalized) yields nothing, without trying the fallback.
std::optional<ClosedTriple> map_manual(const OpenTriple& triple,
                                       const ManualTable& table,
                                       bool use_fallback);

struct ManualMappingResult {
  std::vector<std::pair<ClosedTriple, OpenTriple>> mapped;  // (output, source)
  std::size_t total = 0;
  std::size_t table_hits = 0;      // predicate found in the table
  std::size_t fallback_hits = 0;   // produced by the fallback
  double coverage() const {
    return total == 0 ? 0.0 : static_cast<double>(table_hits) / total;
  }
};

ManualMappingResult map_manual_kb(const OpenKB& kb, const ManualTable& table,
                                  bool use_fallback);

// Each output inherits its source's score; duplicates add up (weight_only).
RankedKB rank_manual(const ManualMappingResult& result);

}  // namespace kbmap
