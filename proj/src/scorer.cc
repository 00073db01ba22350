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

#include "kbmap/scorer.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <string>

#include "kbmap/kb_io.h"
#include "kbmap/text.h"

namespace kbmap {

std::string_view to_string(ScoreMode mode) {
  switch (mode) {
    case ScoreMode::kCombined:
      return "combined";
    case ScoreMode::kWeightOnly:
      return "weight_only";
    case ScoreMode::kRankOnly:
      return "rank_only";
  }
  return "combined";
}

ScoreMode parse_score_mode(std::string_view text) {
  if (text == "combined") return ScoreMode::kCombined;
  if (text == "weight_only") return ScoreMode::kWeightOnly;
  if (text == "rank_only") return ScoreMode::kRankOnly;
  throw InvalidInput("unknown score mode '" + std::string(text) + "'");
}

double final_score(std::span<const Contribution> contribs, ScoreMode mode) {
  if (contribs.empty()) {
    throw InvalidInput("cannot score a triple without contributions");
  }
  std::vector<Contribution> sorted(contribs.begin(), contribs.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0;
  for (const Contribution& c : sorted) {
    if (c.rank < 0) throw InvalidInput("negative rank");
    if (!(c.open_score >= 0)) throw InvalidInput("negative open score");
    const double inv_rank = 1.0 / (static_cast<double>(c.rank) + 1.0);
    switch (mode) {
      case ScoreMode::kCombined:
        total += c.open_score * inv_rank;
        break;
      case ScoreMode::kWeightOnly:
        total += c.open_score;
        break;
      case ScoreMode::kRankOnly:
        total += inv_rank;
        break;
    }
  }
  return total;
}

RankedKB aggregate_contributions(
    const std::vector<std::pair<ClosedTriple, Contribution>>& items,
    ScoreMode mode) {
  std::map<ClosedTriple, std::vector<Contribution>> groups;
  for (const auto& [triple, contribution] : items) {
    groups[triple].push_back(contribution);
  }
  RankedKB kb;
  kb.mode = mode;
  kb.entries.reserve(groups.size());
  for (auto& [triple, contribs] : groups) {
    kb.entries.push_back({triple, final_score(contribs, mode), contribs.size()});
  }
  // `groups` iterates in triple order, so a stable sort on score alone
  // leaves ties in (subject, relation, object) order.
  std::stable_sort(kb.entries.begin(), kb.entries.end(),
                   [](const ScoredClosedTriple& a, const ScoredClosedTriple& b) {
                     return a.final_score > b.final_score;
                   });
  return kb;
}

RankedKB aggregate(const std::vector<Generation>& generations, ScoreMode mode) {
  std::vector<std::pair<ClosedTriple, Contribution>> items;
  items.reserve(generations.size());
  for (const Generation& g : generations) {
    items.push_back({g.candidate, {g.source.score, g.rank}});
  }
  return aggregate_contributions(items, mode);
}

void write_ranked_kb(const RankedKB& kb, std::ostream& out) {
  for (const auto& e : kb.entries) {
    out << e.triple.subject << '\t' << e.triple.relation << '\t'
        << e.triple.object << '\t' << format_double(e.final_score) << '\t'
        << e.support << '\n';
  }
}

void save_ranked_kb(const RankedKB& kb, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_ranked_kb(kb, out);
}

RankedKB load_ranked_kb(const std::filesystem::path& path) {
  auto in = open_input(path);
  RankedKB kb;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 5) {
      throw ParseError(line_no, "expected 5 columns, got " +
                                    std::to_string(fields.size()));
    }
    auto score = parse_double(fields[3]);
    auto support = parse_double(fields[4]);
    if (!score || !support || *support < 0) {
      throw ParseError(line_no, "invalid score or support");
    }
    kb.entries.push_back({{std::string(fields[0]), std::string(fields[1]),
                           std::string(fields[2])},
                          *score,
                          static_cast<std::size_t>(*support)});
  }
  return kb;
}

}  // namespace kbmap
