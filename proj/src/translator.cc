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

#include "kbmap/translator.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>
#include <utility>

#include "json.hpp"
#include "json_codec.h"
#include "kbmap/batching.h"
#include "kbmap/kb_io.h"
#include "triple_text.h"

namespace kbmap {

std::string format_training_example(const Alignment& alignment) {
  return serialize_triple(alignment.open) + " " + std::string(kSep) + " " +
         serialize_triple(alignment.closed);
}

std::string format_prompt(const OpenTriple& triple) {
  return serialize_triple(triple) + " " + std::string(kSep) + " ";
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kArity:
      return "arity";
    case RejectReason::kUnknownRelation:
      return "unknown_relation";
    case RejectReason::kEmptyField:
      return "empty_field";
  }
  return "arity";
}

ParseResult parse_generation(std::string_view text,
                             const RelationSchema& schema) {
  auto fields = split_triple_text(trim(after_last(text, kSep)));
  if (!fields) return Rejection{RejectReason::kArity};
  auto& [s, r, o] = *fields;
  if (s.empty() || r.empty() || o.empty()) {
    return Rejection{RejectReason::kEmptyField};
  }
  if (!schema.contains(r)) return Rejection{RejectReason::kUnknownRelation};
  return ClosedTriple{std::move(s), std::move(r), std::move(o)};
}

std::vector<Generation> filter_generations(const OpenTriple& source,
                                           std::vector<RankedTriple> parsed,
                                           const Normalizer& normalizer) {
  std::stable_sort(parsed.begin(), parsed.end(),
                   [](const RankedTriple& a, const RankedTriple& b) {
                     return a.rank < b.rank;
                   });
  std::vector<Generation> out;
  std::set<ClosedTriple> seen;
  for (RankedTriple& c : parsed) {
    if (normalizer.normalize(c.triple.subject) ==
        normalizer.normalize(c.triple.object)) {
      continue;
    }
    if (!seen.insert(c.triple).second) continue;
    out.push_back({source, std::move(c.triple), c.rank, c.score});
  }
  return out;
}

TranslateResult translate_kb(const OpenKB& open_kb, const Generator& generator,
                             const RelationSchema& schema,
                             const TranslateOptions& options,
                             const Normalizer& normalizer) {
  if (options.k < 1) throw InvalidInput("k must be positive");

  // Distinct prompts in first-seen order.
  std::vector<std::string> prompts;
  std::vector<std::size_t> prompt_of(open_kb.triples.size());
  {
    std::unordered_map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < open_kb.triples.size(); ++i) {
      std::string prompt = format_prompt(open_kb.triples[i]);
      auto [it, inserted] = ids.emplace(prompt, prompts.size());
      if (inserted) prompts.push_back(std::move(prompt));
      prompt_of[i] = it->second;
    }
  }

  auto batches = run_batches<std::vector<std::vector<Candidate>>>(
      prompts.size(), options.batch_size, options.max_in_flight,
      [&](std::size_t begin, std::size_t end) {
        auto span =
            std::span<const std::string>(prompts).subspan(begin, end - begin);
        auto result = generator.generate(span, options.k);
        if (result.size() != span.size()) {
          throw std::runtime_error("generator returned " +
                                   std::to_string(result.size()) +
                                   " results for " +
                                   std::to_string(span.size()) + " prompts");
        }
        for (const auto& candidates : result) {
          check_candidates(candidates, options.k);
        }
        return result;
      });
  std::vector<std::vector<Candidate>> per_prompt;
  per_prompt.reserve(prompts.size());
  for (auto& batch : batches) {
    for (auto& c : batch) per_prompt.push_back(std::move(c));
  }

  TranslateResult result;
  result.stats.prompts = prompts.size();
  for (std::size_t i = 0; i < open_kb.triples.size(); ++i) {
    const OpenTriple& source = open_kb.triples[i];
    std::vector<RankedTriple> parsed;
    for (const Candidate& c : per_prompt[prompt_of[i]]) {
      ++result.stats.candidates;
      ParseResult p = parse_generation(c.text, schema);
      if (auto* rejection = std::get_if<Rejection>(&p)) {
        switch (rejection->reason) {
          case RejectReason::kArity:
            ++result.stats.rejected_arity;
            break;
          case RejectReason::kUnknownRelation:
            ++result.stats.rejected_unknown_relation;
            break;
          case RejectReason::kEmptyField:
            ++result.stats.rejected_empty_field;
            break;
        }
        continue;
      }
      parsed.push_back({std::get<ClosedTriple>(std::move(p)), c.rank, c.score});
    }
    const std::size_t before = parsed.size();
    std::size_t degenerate = 0;
    for (const auto& c : parsed) {
      if (normalizer.normalize(c.triple.subject) ==
          normalizer.normalize(c.triple.object)) {
        ++degenerate;
      }
    }
    auto kept = filter_generations(source, std::move(parsed), normalizer);
    result.stats.dropped_degenerate += degenerate;
    result.stats.dropped_duplicate += before - degenerate - kept.size();
    result.stats.kept += kept.size();
    for (auto& g : kept) result.generations.push_back(std::move(g));
  }
  return result;
}

std::string generation_to_json(const Generation& g) {
  nlohmann::json j;
  j["source"] = open_to_json(g.source);
  j["candidate"] = closed_to_json(g.candidate);
  j["rank"] = g.rank;
  j["gen_score"] = g.gen_score;
  return j.dump();
}

Generation generation_from_json(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  Generation g;
  g.source = open_from_json(j.at("source"));
  g.candidate = closed_from_json(j.at("candidate"));
  g.rank = j.at("rank").get<int>();
  if (g.rank < 0) throw InvalidInput("negative generation rank");
  g.gen_score = j.value("gen_score", 0.0);
  return g;
}

void write_generations(const std::vector<Generation>& generations,
                       std::ostream& out) {
  for (const auto& g : generations) out << generation_to_json(g) << '\n';
}

void save_generations(const std::vector<Generation>& generations,
                      const std::filesystem::path& path) {
  auto out = open_output(path);
  write_generations(generations, out);
}

std::vector<Generation> load_generations(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<Generation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(generation_from_json(line));
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

}  // namespace kbmap
