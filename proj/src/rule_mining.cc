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

#include "kbmap/rule_mining.h"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "kbmap/kb_io.h"
#include "kbmap/text.h"

namespace kbmap {

std::vector<std::string> top_predicate_tokens(const OpenKB& kb, std::size_t n,
                                              const Normalizer& normalizer) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const OpenTriple& t : kb.triples) {
    for (std::string& tok : normalizer.lemmas(t.predicate)) ++counts[tok];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(),
                                                          counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > n) ranked.resize(n);
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (auto& [tok, count] : ranked) out.push_back(std::move(tok));
  return out;
}

namespace {

std::vector<std::string> contained_tokens(const std::string& predicate,
                                          const std::set<std::string>& top,
                                          const Normalizer& normalizer) {
  std::set<std::string> found;
  for (std::string& tok : normalizer.lemmas(predicate)) {
    if (top.count(tok)) found.insert(std::move(tok));
  }
  return {found.begin(), found.end()};
}

}  // namespace

MetaKB build_meta_kb(const AlignmentSet& alignments, const Taxonomy& taxonomy,
                     const OpenKB& open_kb, const MetaKBOptions& options,
                     const Normalizer& normalizer) {
  MetaKB meta;
  meta.top_tokens = top_predicate_tokens(open_kb, options.top_tokens, normalizer);
  const std::set<std::string> top(meta.top_tokens.begin(),
                                  meta.top_tokens.end());

  // Unfiltered hypernyms first; the filter needs global counts.
  for (std::size_t i = 0; i < alignments.alignments.size(); ++i) {
    const Alignment& a = alignments.alignments[i];
    if (a.method != AlignMethod::kRule) continue;
    const NormalizedPhrase s = normalizer.normalize(a.open.subject);
    const NormalizedPhrase o = normalizer.normalize(a.open.object);
    const NormalizedPhrase cs = normalizer.normalize(a.closed.subject);
    const NormalizedPhrase co = normalizer.normalize(a.closed.object);
    // Both closed sides would collapse into one reified term.
    if (cs == co) continue;
    MetaMapping m;
    m.id = "M" + std::to_string(meta.mappings.size() + 1);
    m.subject_term = a.closed.subject + "+" + m.id;
    m.object_term = a.closed.object + "+" + m.id;
    m.relation = a.closed.relation;
    m.subject_in_subject = contains_subsequence(s, cs);
    m.subject_in_object = contains_subsequence(o, cs);
    m.object_in_subject = contains_subsequence(s, co);
    m.object_in_object = contains_subsequence(o, co);
    m.subject_isa = taxonomy.hypernyms(a.closed.subject);
    m.object_isa = taxonomy.hypernyms(a.closed.object);
    m.contains = contained_tokens(a.open.predicate, top, normalizer);
    m.alignment_index = i;
    meta.mappings.push_back(std::move(m));
  }

  std::map<std::string, std::size_t> occurrences;
  std::map<std::string, std::size_t> mapping_counts;
  for (const MetaMapping& m : meta.mappings) {
    std::set<std::string> seen;
    for (const auto* isa : {&m.subject_isa, &m.object_isa}) {
      for (const std::string& h : *isa) {
        ++occurrences[h];
        seen.insert(h);
      }
    }
    for (const std::string& h : seen) ++mapping_counts[h];
  }
  const double limit =
      options.isa_max_mapping_fraction * static_cast<double>(meta.mappings.size());
  auto keep = [&](const std::string& h) {
    return occurrences[h] >= options.isa_min_count &&
           static_cast<double>(mapping_counts[h]) < limit;
  };

  for (MetaMapping& m : meta.mappings) {
    for (auto* isa : {&m.subject_isa, &m.object_isa}) {
      std::erase_if(*isa, [&](const std::string& h) { return !keep(h); });
    }
    meta.mapping_ids.insert(m.id);
    meta.facts.push_back({m.subject_term, m.relation, m.object_term});
    if (m.subject_in_subject) {
      meta.facts.push_back({m.id, std::string(kInSubj), m.subject_term});
    }
    if (m.object_in_subject) {
      meta.facts.push_back({m.id, std::string(kInSubj), m.object_term});
    }
    if (m.subject_in_object) {
      meta.facts.push_back({m.id, std::string(kInObj), m.subject_term});
    }
    if (m.object_in_object) {
      meta.facts.push_back({m.id, std::string(kInObj), m.object_term});
    }
    for (const std::string& h : m.subject_isa) {
      meta.facts.push_back({m.subject_term, std::string(kIsa), h});
    }
    for (const std::string& h : m.object_isa) {
      meta.facts.push_back({m.object_term, std::string(kIsa), h});
    }
    for (const std::string& tok : m.contains) {
      meta.facts.push_back({m.id, std::string(kContains), tok});
    }
  }
  return meta;
}

std::string_view to_string(RuleVar v) { return v == RuleVar::kA ? "?a" : "?b"; }

namespace {

RuleVar other(RuleVar v) { return v == RuleVar::kA ? RuleVar::kB : RuleVar::kA; }

}  // namespace

bool Rule::well_formed() const {
  if (relation.empty()) return false;
  if (insubj && inobj) return *insubj != *inobj;
  if (!insubj && !inobj) return false;
  // Single-sided: ?i needs CONTAINS and the free variable needs ISA.
  const RuleVar x = insubj ? *insubj : *inobj;
  return contains.has_value() && isa.has_value() && isa->first == other(x);
}

std::string Rule::text() const {
  // Atoms in relation order: CONTAINS, INOBJ, INSUBJ, ISA.
  std::vector<std::string> atoms;
  if (contains) atoms.push_back("?i CONTAINS " + *contains);
  if (inobj) atoms.push_back("?i INOBJ " + std::string(to_string(*inobj)));
  if (insubj) atoms.push_back("?i INSUBJ " + std::string(to_string(*insubj)));
  if (isa) {
    atoms.push_back(std::string(to_string(isa->first)) + " ISA " + isa->second);
  }
  return join(atoms, " ∧ ") + " ⇒ ?a " + relation + " ?b";
}

Rule parse_rule(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  auto arrow = std::find_if(words.begin(), words.end(), [](const auto& w) {
    return w == "⇒" || w == "=>";
  });
  if (arrow == words.end()) throw InvalidInput("rule has no '⇒'");
  const std::vector<std::string> head(arrow + 1, words.end());
  if (head.size() != 3) throw InvalidInput("rule head must be '?x r ?y'");

  auto var = [](const std::string& w) -> RuleVar {
    if (w == "?a") return RuleVar::kA;
    if (w == "?b") return RuleVar::kB;
    throw InvalidInput("expected ?a or ?b, got '" + w + "'");
  };
  const RuleVar h1 = var(head[0]);
  const RuleVar h2 = var(head[2]);
  if (h1 == h2) throw InvalidInput("rule head repeats a variable");
  const bool mirrored = h1 == RuleVar::kB;
  auto canon = [&](RuleVar v) { return mirrored ? other(v) : v; };

  Rule rule;
  rule.relation = head[1];
  std::vector<std::string> atom;
  std::set<std::string> used;
  auto flush = [&] {
    if (atom.size() != 3) throw InvalidInput("malformed rule atom");
    const std::string& rel = atom[1];
    if (!used.insert(rel).second) {
      throw InvalidInput("relation " + rel + " repeats in rule body");
    }
    if (rel == kInSubj || rel == kInObj || rel == kContains) {
      if (atom[0] != "?i") throw InvalidInput(rel + " must start with ?i");
      if (rel == kInSubj) rule.insubj = canon(var(atom[2]));
      if (rel == kInObj) rule.inobj = canon(var(atom[2]));
      if (rel == kContains) rule.contains = atom[2];
    } else if (rel == kIsa) {
      rule.isa = std::make_pair(canon(var(atom[0])), atom[2]);
    } else {
      throw InvalidInput("unknown body relation '" + rel + "'");
    }
    atom.clear();
  };
  for (auto it = words.begin(); it != arrow; ++it) {
    if (*it == "∧" || *it == "^") {
      flush();
    } else {
      atom.push_back(*it);
    }
  }
  flush();
  if (!rule.well_formed()) {
    throw InvalidInput("rule is not closed: " + std::string(text));
  }
  return rule;
}

namespace {

struct BodyKey {
  std::optional<RuleVar> insubj;
  std::optional<RuleVar> inobj;
  std::optional<std::pair<RuleVar, std::string>> isa;
  std::optional<std::string> contains;
  auto operator<=>(const BodyKey&) const = default;
};

// Term 0 is the reified subject s'+M, term 1 the object o'+M.
struct TermView {
  std::array<bool, 2> in_subj;
  std::array<bool, 2> in_obj;
  std::array<const std::vector<std::string>*, 2> isa;
};

TermView view(const MetaMapping& m) {
  return {{m.subject_in_subject, m.object_in_subject},
          {m.subject_in_object, m.object_in_object},
          {&m.subject_isa, &m.object_isa}};
}

}  // namespace

std::vector<Rule> mine_rules(const MetaKB& meta, const MineOptions& options) {
  std::map<BodyKey, std::size_t> body_support;
  std::map<std::pair<BodyKey, std::string>, std::size_t> support;

  // Connected bodies: every (?a, ?b) binding lives inside one mapping.
  for (const MetaMapping& m : meta.mappings) {
    const TermView v = view(m);
    for (RuleVar subj_var : {RuleVar::kA, RuleVar::kB}) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const int subj_term = subj_var == RuleVar::kA ? a : b;
          const int obj_term = subj_var == RuleVar::kA ? b : a;
          if (!v.in_subj[subj_term] || !v.in_obj[obj_term]) continue;
          std::vector<std::optional<std::pair<RuleVar, std::string>>> isas{
              std::nullopt};
          for (const std::string& h : *v.isa[a]) isas.push_back({{RuleVar::kA, h}});
          for (const std::string& h : *v.isa[b]) isas.push_back({{RuleVar::kB, h}});
          std::vector<std::optional<std::string>> toks{std::nullopt};
          for (const std::string& t : m.contains) toks.push_back(t);
          const bool head = a == 0 && b == 1;
          for (const auto& isa : isas) {
            for (const auto& tok : toks) {
              BodyKey key{subj_var, other(subj_var), isa, tok};
              ++body_support[key];
              if (head) ++support[{std::move(key), m.relation}];
            }
          }
        }
      }
    }
  }

  // Single-sided bodies: ?a and ?b are only joined through the head, so the
  // body holds on the cross product of the x and y candidates.
  std::map<std::pair<bool, std::string>, std::size_t> x_count;  // (is_subj, tok)
  std::map<std::string, std::size_t> y_count;                   // ISA h
  for (const MetaMapping& m : meta.mappings) {
    const TermView v = view(m);
    for (int t = 0; t < 2; ++t) {
      for (const std::string& tok : m.contains) {
        if (v.in_subj[t]) ++x_count[{true, tok}];
        if (v.in_obj[t]) ++x_count[{false, tok}];
      }
      for (const std::string& h : *v.isa[t]) ++y_count[h];
    }
  }
  std::map<BodyKey, std::size_t> single_body;
  for (const MetaMapping& m : meta.mappings) {
    const TermView v = view(m);
    for (RuleVar x : {RuleVar::kA, RuleVar::kB}) {
      const int x_term = x == RuleVar::kA ? 0 : 1;
      const int y_term = 1 - x_term;
      for (bool is_subj : {true, false}) {
        if (!(is_subj ? v.in_subj[x_term] : v.in_obj[x_term])) continue;
        for (const std::string& tok : m.contains) {
          for (const std::string& h : *v.isa[y_term]) {
            BodyKey key;
            (is_subj ? key.insubj : key.inobj) = x;
            key.isa = {{other(x), h}};
            key.contains = tok;
            single_body[key] = x_count[{is_subj, tok}] * y_count[h];
            ++support[{std::move(key), m.relation}];
          }
        }
      }
    }
  }
  body_support.insert(single_body.begin(), single_body.end());

  std::vector<Rule> rules;
  for (const auto& [head, count] : support) {
    const auto& [key, relation] = head;
    if (count < options.min_support) continue;
    const std::size_t body = body_support.at(key);
    const double conf = static_cast<double>(count) / static_cast<double>(body);
    if (!(conf > options.min_confidence)) continue;
    Rule r;
    r.insubj = key.insubj;
    r.inobj = key.inobj;
    r.isa = key.isa;
    r.contains = key.contains;
    r.relation = relation;
    r.confidence = conf;
    r.support = count;
    r.body_support = body;
    rules.push_back(std::move(r));
  }
  std::vector<std::pair<std::string, std::size_t>> order;
  order.reserve(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    order.emplace_back(rules[i].text(), i);
  }
  std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    const Rule& a = rules[x.second];
    const Rule& b = rules[y.second];
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.support != b.support) return a.support > b.support;
    return x.first < y.first;
  });
  std::vector<Rule> sorted;
  sorted.reserve(rules.size());
  for (const auto& [text, i] : order) sorted.push_back(std::move(rules[i]));
  return sorted;
}

std::vector<RuleCandidate> apply_rules(const std::vector<Rule>& rules,
                                       const OpenKB& open_kb,
                                       const Taxonomy& taxonomy,
                                       const std::vector<std::string>& top_tokens,
                                       const Normalizer& normalizer) {
  std::vector<RuleCandidate> out;
  if (rules.empty()) return out;
  const std::set<std::string> top(top_tokens.begin(), top_tokens.end());
  for (std::size_t i = 0; i < open_kb.triples.size(); ++i) {
    const OpenTriple& t = open_kb.triples[i];
    const std::array<const std::string*, 2> terms{&t.subject, &t.object};
    const std::array<NormalizedPhrase, 2> norm{normalizer.normalize(t.subject),
                                               normalizer.normalize(t.object)};
    if (norm[0] == norm[1]) continue;
    std::array<bool, 2> in_subj{}, in_obj{};
    std::array<std::vector<std::string>, 2> isa;
    for (int k = 0; k < 2; ++k) {
      in_subj[k] = contains_subsequence(norm[0], norm[k]);
      in_obj[k] = contains_subsequence(norm[1], norm[k]);
      isa[k] = taxonomy.hypernyms(*terms[k]);
    }
    const std::vector<std::string> toks =
        contained_tokens(t.predicate, top, normalizer);
    auto has = [](const std::vector<std::string>& sorted, const std::string& x) {
      return std::binary_search(sorted.begin(), sorted.end(), x);
    };
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const Rule& rule = rules[r];
      if (rule.contains && !has(toks, *rule.contains)) continue;
      for (int a = 0; a < 2; ++a) {
        const int b = 1 - a;
        auto bound = [&](RuleVar v) { return v == RuleVar::kA ? a : b; };
        if (rule.insubj && !in_subj[bound(*rule.insubj)]) continue;
        if (rule.inobj && !in_obj[bound(*rule.inobj)]) continue;
        if (rule.isa && !has(isa[bound(rule.isa->first)], rule.isa->second)) {
          continue;
        }
        out.push_back({{*terms[a], rule.relation, *terms[b]},
                       rule.confidence * t.score,
                       r,
                       i});
      }
    }
  }
  return out;
}

RankedKB rank_rule_candidates(const std::vector<RuleCandidate>& candidates) {
  std::vector<std::pair<ClosedTriple, Contribution>> items;
  items.reserve(candidates.size());
  for (const RuleCandidate& c : candidates) {
    items.push_back({c.triple, {c.score, 0}});
  }
  return aggregate_contributions(items, ScoreMode::kWeightOnly);
}

void write_rules(const std::vector<Rule>& rules, std::ostream& out) {
  for (const Rule& r : rules) {
    out << r.text() << '\t' << format_double(r.confidence) << '\t' << r.support
        << '\n';
  }
}

void save_rules(const std::vector<Rule>& rules,
                const std::filesystem::path& path) {
  auto out = open_output(path);
  write_rules(rules, out);
}

std::vector<Rule> parse_rules(std::istream& in) {
  std::vector<Rule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected rule<TAB>confidence<TAB>support");
    }
    Rule rule;
    try {
      rule = parse_rule(fields[0]);
    } catch (const InvalidInput& e) {
      throw ParseError(line_no, e.what());
    }
    const auto conf = parse_double(fields[1]);
    const auto support = parse_double(fields[2]);
    if (!conf || *conf < 0 || *conf > 1 || !support || *support < 0 ||
        *support != static_cast<double>(static_cast<std::size_t>(*support))) {
      throw ParseError(line_no, "invalid confidence or support");
    }
    rule.confidence = *conf;
    rule.support = static_cast<std::size_t>(*support);
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<Rule> load_rules(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_rules(in);
}

void write_meta_kb(const MetaKB& meta, std::ostream& out) {
  for (const MetaFact& f : meta.facts) {
    out << f.subject << '\t' << f.relation << '\t' << f.object << '\n';
  }
}

}  // namespace kbmap
