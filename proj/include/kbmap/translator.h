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

// Generative translation: training-example formatting, prompting, and turning
// raw generator text back into closed triples.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kbmap/alignment.h"
#include "kbmap/generator.h"
#include "kbmap/normalize.h"
#include "kbmap/triple.h"

namespace kbmap {

inline constexpr std::string_view kSep = "[SEP]";

// "<open s, p, o> [SEP] <closed s, r, o>", phrases verbatim.
std::string format_training_example(const Alignment& alignment);

// "<s, p, o> [SEP] ", the prefix the generator is asked to complete.
std::string format_prompt(const OpenTriple& triple);

enum class RejectReason { kArity, kUnknownRelation, kEmptyField };
std::string_view to_string(RejectReason reason);

struct Rejection {
  RejectReason reason;
  friend bool operator==(const Rejection&, const Rejection&) = default;
};

using ParseResult = std::variant<ClosedTriple, Rejection>;

// Keeps the text after the last [SEP] (all of it if there is none), then
// splits at the first and the last ", " into subject, relation and object.
// Fields are trimmed. The relation must belong to `schema`.
ParseResult parse_generation(std::string_view text,
                             const RelationSchema& schema);

struct Generation {
  OpenTriple source;
  ClosedTriple candidate;
  int rank = 0;
  double gen_score = 0;

  friend bool operator==(const Generation&, const Generation&) = default;
};

struct RankedTriple {
  ClosedTriple triple;
  int rank = 0;
  double score = 0;
};

// Drops candidates whose normalized subject equals the normalized object,
// then repeated triples (the lowest rank survives). Output is ordered by
// rank; ranks are kept as generated, not renumbered.
std::vector<Generation> filter_generations(
    const OpenTriple& source, std::vector<RankedTriple> parsed,
    const Normalizer& normalizer = Normalizer::builtin());

struct TranslateOptions {
  int k = 10;
  std::size_t batch_size = 32;    // prompts per generator request
  std::size_t max_in_flight = 1;  // concurrent generator requests
};

struct TranslateStats {
  std::size_t prompts = 0;
  std::size_t candidates = 0;
  std::size_t rejected_arity = 0;
  std::size_t rejected_unknown_relation = 0;
  std::size_t rejected_empty_field = 0;
  std::size_t dropped_degenerate = 0;
  std::size_t dropped_duplicate = 0;
  std::size_t kept = 0;
};

struct TranslateResult {
  std::vector<Generation> generations;  // open-KB order, then rank
  TranslateStats stats;
};

// Prompts the generator once per distinct open triple text. A failing
// request raises BatchError and nothing is returned.
TranslateResult translate_kb(const OpenKB& open_kb, const Generator& generator,
                             const RelationSchema& schema,
                             const TranslateOptions& options,
                             const Normalizer& normalizer = Normalizer::builtin());

// JSONL: {"source":{s,p,o,score},"candidate":{s,r,o},"rank","gen_score"}
std::string generation_to_json(const Generation& generation);
Generation generation_from_json(std::string_view line);
void write_generations(const std::vector<Generation>& generations,
                       std::ostream& out);
void save_generations(const std::vector<Generation>& generations,
                      const std::filesystem::path& path);
std::vector<Generation> load_generations(const std::filesystem::path& path);

}  // namespace kbmap
