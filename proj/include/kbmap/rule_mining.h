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

// Rule-mining baseline. Alignments are reified into a meta-KB:
//
//   (s'+M, r', o'+M)        the mapped closed triple
//   (M, INSUBJ, x+M)        x in {s', o'} occurs in the open subject
//   (M, INOBJ, x+M)         x occurs in the open object
//   (x+M, ISA, h)           h is a (frequent enough) hypernym of x
//   (M, CONTAINS, tok)      tok is a frequent predicate token found in p
//
// and Horn rules such as
//
//   ?i CONTAINS cause ∧ ?i INOBJ ?b ∧ ?i INSUBJ ?a ⇒ ?a Causes ?b
//
// are mined with standard confidence.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "kbmap/alignment.h"
#include "kbmap/normalize.h"
#include "kbmap/scorer.h"
#include "kbmap/taxonomy.h"
#include "kbmap/triple.h"

namespace kbmap {

inline constexpr std::string_view kInSubj = "INSUBJ";
inline constexpr std::string_view kInObj = "INOBJ";
inline constexpr std::string_view kIsa = "ISA";
inline constexpr std::string_view kContains = "CONTAINS";

struct MetaFact {
  std::string subject;
  std::string relation;
  std::string object;
  auto operator<=>(const MetaFact&) const = default;
};

// Structured view of one reified mapping; the facts list is derived from
// these and the two always agree.
struct MetaMapping {
  std::string id;            // "M1", "M2", ...
  std::string subject_term;  // s' + "+" + id
  std::string object_term;   // o' + "+" + id
  std::string relation;      // r'
  bool subject_in_subject = false;
  bool subject_in_object = false;
  bool object_in_subject = false;
  bool object_in_object = false;
  std::vector<std::string> subject_isa;  // sorted, filtered
  std::vector<std::string> object_isa;
  std::vector<std::string> contains;     // sorted
  std::size_t alignment_index = 0;
};

struct MetaKB {
  std::vector<MetaFact> facts;
  std::set<std::string> mapping_ids;
  std::vector<MetaMapping> mappings;
  std::vector<std::string> top_tokens;  // by frequency, then lexicographic
};

struct MetaKBOptions {
  std::size_t top_tokens = 100;
  std::size_t isa_min_count = 10;
  // A hypernym must occur in strictly fewer than this fraction of mappings.
  double isa_max_mapping_fraction = 0.5;
};

// The `n` most frequent lemmatized predicate tokens (stopwords kept, each
// occurrence counted), ties broken lexicographically.
std::vector<std::string> top_predicate_tokens(
    const OpenKB& kb, std::size_t n,
    const Normalizer& normalizer = Normalizer::builtin());

// Only alignments with method rule are reified; others are skipped.
MetaKB build_meta_kb(const AlignmentSet& alignments, const Taxonomy& taxonomy,
                     const OpenKB& open_kb, const MetaKBOptions& options = {},
                     const Normalizer& normalizer = Normalizer::builtin());

enum class RuleVar { kA, kB };

std::string_view to_string(RuleVar v);

// Body shapes:
//   connected:     INSUBJ and INOBJ on different variables
//   single-sided:  one of INSUBJ / INOBJ on x, CONTAINS, and ISA on the other
// plus the optional ISA and CONTAINS atoms. The head is always ?a r ?b;
// the mirrored head ?b r ?a is the same rule with the variables renamed.
struct Rule {
  std::optional<RuleVar> insubj;
  std::optional<RuleVar> inobj;
  std::optional<std::pair<RuleVar, std::string>> isa;
  std::optional<std::string> contains;
  std::string relation;
  double confidence = 0;
  std::size_t support = 0;       // body and head
  std::size_t body_support = 0;  // body alone

  // Variables bound by INSUBJ / INOBJ / ISA are well formed (closed).
  bool well_formed() const;
  // "?i CONTAINS cause ∧ ?i INOBJ ?b ∧ ?i INSUBJ ?a ⇒ ?a Causes ?b"
  std::string text() const;
  // Identity without the statistics.
  auto key() const { return std::tie(insubj, inobj, isa, contains, relation); }
};

// Accepts the text() syntax, "^" for ∧ and "=>" for ⇒, and a mirrored head
// ?b r ?a (which is renamed to the canonical form). Throws InvalidInput.
Rule parse_rule(std::string_view text);

struct MineOptions {
  double min_confidence = 0.5;  // strict
  std::size_t min_support = 20;
};

// Exact counting over the distinct (?a, ?b) bindings of each body.
// Sorted by confidence desc, support desc, then rule text.
std::vector<Rule> mine_rules(const MetaKB& meta, const MineOptions& options = {});

struct RuleCandidate {
  ClosedTriple triple;
  double score = 0;  // rule confidence * open score
  std::size_t rule_index = 0;
  std::size_t open_index = 0;
};

// Each open triple is reified on its own: its subject and object are the two
// terms, every rule is checked on all ordered pairs of distinct terms.
// Outputs with normalized subject == object are dropped. Ordered by open
// triple, then rule, then binding (subject first).
std::vector<RuleCandidate> apply_rules(
    const std::vector<Rule>& rules, const OpenKB& open_kb,
    const Taxonomy& taxonomy, const std::vector<std::string>& top_tokens,
    const Normalizer& normalizer = Normalizer::builtin());

// Candidates for the same triple add up (weight_only).
RankedKB rank_rule_candidates(const std::vector<RuleCandidate>& candidates);

// rule<TAB>confidence<TAB>support
void write_rules(const std::vector<Rule>& rules, std::ostream& out);
void save_rules(const std::vector<Rule>& rules,
                const std::filesystem::path& path);
std::vector<Rule> parse_rules(std::istream& in);
std::vector<Rule> load_rules(const std::filesystem::path& path);

void write_meta_kb(const MetaKB& meta, std::ostream& out);

}  // namespace kbmap
