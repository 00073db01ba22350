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

#include "kbmap/manual_mapping.h"

#include <istream>
#include <utility>

#include "kbmap/kb_io.h"
#include "kbmap/text.h"

namespace kbmap {

namespace {

// Lemmas with stopwords kept: "be" and "be in" must stay distinct keys.
std::string predicate_key(const Normalizer& n, const std::string& predicate) {
  return join(n.lemmas(predicate), " ");
}

}  // namespace

ManualTable::ManualTable(const std::map<std::string, ManualEntry>& entries,
                         const RelationSchema& schema,
                         std::string fallback_relation,
                         const Normalizer& normalizer)
    : fallback_(std::move(fallback_relation)), normalizer_(&normalizer) {
  if (!schema.contains(fallback_)) {
    throw InvalidInput("fallback relation '" + fallback_ + "' not in schema");
  }
  for (const auto& [predicate, entry] : entries) {
    if (!schema.contains(entry.relation)) {
      throw InvalidInput("manual table maps '" + predicate +
                         "' to unknown relation '" + entry.relation + "'");
    }
    if (entry.inverted && schema.has_inverse_markers() &&
        !schema.invertible(entry.relation)) {
      throw InvalidInput("relation '" + entry.relation +
                         "' is not marked invertible in the schema");
    }
    const std::string key = predicate_key(normalizer, predicate);
    if (key.empty()) {
      throw InvalidInput("manual table predicate '" + predicate +
                         "' normalizes to nothing");
    }
    auto [it, inserted] = entries_.emplace(key, entry);
    if (!inserted && (it->second.relation != entry.relation ||
                      it->second.inverted != entry.inverted)) {
      throw InvalidInput("conflicting manual entries for '" + key + "'");
    }
  }
}

const ManualEntry* ManualTable::find(const std::string& predicate) const {
  auto it = entries_.find(predicate_key(*normalizer_, predicate));
  return it == entries_.end() ? nullptr : &it->second;
}

ManualTable parse_manual_table(std::istream& in, const RelationSchema& schema,
                               std::string fallback_relation) {
  std::map<std::string, ManualEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(line_no, "expected predicate<TAB>relation[<TAB>inv]");
    }
    ManualEntry entry{std::string(trim(fields[1])), false};
    if (fields.size() == 3) {
      if (trim(fields[2]) != "inv") {
        throw ParseError(line_no, "third column must be 'inv'");
      }
      entry.inverted = true;
    }
    const std::string predicate(trim(fields[0]));
    if (predicate.empty() || entry.relation.empty()) {
      throw ParseError(line_no, "empty field");
    }
    if (auto [it, inserted] = entries.emplace(predicate, entry);
        !inserted && (it->second.relation != entry.relation ||
                      it->second.inverted != entry.inverted)) {
      throw ParseError(line_no, "conflicting entry for '" + predicate + "'");
    }
  }
  try {
    return ManualTable(entries, schema, std::move(fallback_relation));
  } catch (const InvalidInput& e) {
    throw ParseError(line_no, e.what());
  }
}

ManualTable load_manual_table(const std::filesystem::path& path,
                              const RelationSchema& schema,
                              std::string fallback_relation) {
  auto in = open_input(path);
  return parse_manual_table(in, schema, std::move(fallback_relation));
}

namespace {

enum class Route { kNone, kTable, kFallback };

std::pair<std::optional<ClosedTriple>, Route> map_one(const OpenTriple& t,
                                                      const ManualTable& table,
                                                      bool use_fallback) {
  const Normalizer& n = table.normalizer();
  ClosedTriple out;
  Route route = Route::kNone;
  if (const ManualEntry* entry = table.find(t.predicate)) {
    route = Route::kTable;
    out = entry->inverted ? ClosedTriple{t.object, entry->relation, t.subject}
                          : ClosedTriple{t.subject, entry->relation, t.object};
  } else if (use_fallback) {
    route = Route::kFallback;
    out = {t.subject, table.fallback_relation(), t.predicate + " " + t.object};
  } else {
    return {std::nullopt, Route::kNone};
  }
  if (n.normalize(out.subject) == n.normalize(out.object)) {
    return {std::nullopt, route};
  }
  return {std::move(out), route};
}

}  // namespace

std::optional<ClosedTriple> map_manual(const OpenTriple& triple,
                                       const ManualTable& table,
                                       bool use_fallback) {
  return map_one(triple, table, use_fallback).first;
}

ManualMappingResult map_manual_kb(const OpenKB& kb, const ManualTable& table,
                                  bool use_fallback) {
  ManualMappingResult result;
  result.total = kb.triples.size();
  for (const OpenTriple& t : kb.triples) {
    auto [mapped, route] = map_one(t, table, use_fallback);
    if (route == Route::kTable) ++result.table_hits;
    if (!mapped) continue;
    if (route == Route::kFallback) ++result.fallback_hits;
    result.mapped.emplace_back(std::move(*mapped), t);
  }
  return result;
}

RankedKB rank_manual(const ManualMappingResult& result) {
  std::vector<std::pair<ClosedTriple, Contribution>> items;
  items.reserve(result.mapped.size());
  for (const auto& [closed, source] : result.mapped) {
    items.push_back({closed, {source.score, 0}});
  }
  return aggregate_contributions(items, ScoreMode::kWeightOnly);
}

}  // namespace kbmap
