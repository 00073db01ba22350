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

#include "kbmap/metrics.h"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "kbmap/text.h"

namespace kbmap {

namespace {

Metric ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::size_t count_in(const TripleSet& a, const TripleSet& b,
                     const TripleSet* exclude = nullptr) {
  std::size_t n = 0;
  for (const TripleKey& k : a) {
    if (b.count(k) && !(exclude && exclude->count(k))) ++n;
  }
  return n;
}

std::size_t count_outside(const TripleSet& a, const TripleSet& exclude) {
  std::size_t n = 0;
  for (const TripleKey& k : a) n += exclude.count(k) ? 0 : 1;
  return n;
}

double harmonic(std::size_t n) {
  double h = 0;
  for (std::size_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

}  // namespace

std::string format_metric(const Metric& m) {
  if (!m) return "NA";
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << *m;
  return out.str();
}

TripleKey triple_key(const ClosedTriple& t) {
  return {ascii_lower(trim(t.subject)), ascii_lower(trim(t.relation)),
          ascii_lower(trim(t.object))};
}

TripleSet key_set(std::span<const ClosedTriple> triples) {
  TripleSet out;
  for (const ClosedTriple& t : triples) out.insert(triple_key(t));
  return out;
}

Metric automatic_recall(const TripleSet& trans, const TripleSet& target) {
  return ratio(count_in(trans, target), target.size());
}

Metric automatic_precision(const TripleSet& trans, const TripleSet& target) {
  return ratio(count_in(trans, target), trans.size());
}

Metric barred_recall(const TripleSet& trans, const TripleSet& target,
                     const TripleSet& train) {
  return ratio(count_in(trans, target, &train), count_outside(target, train));
}

Metric barred_precision(const TripleSet& trans, const TripleSet& target,
                        const TripleSet& train) {
  return ratio(count_in(trans, target, &train), count_outside(trans, train));
}

Metric precision_at_k(std::span<const TripleKey> ranked,
                      const TripleSet& target, std::size_t k,
                      const TripleSet* train) {
  std::size_t taken = 0, hits = 0;
  for (const TripleKey& key : ranked) {
    if (taken == k) break;
    if (train && train->count(key)) continue;
    ++taken;
    hits += target.count(key);
  }
  return ratio(hits, taken);
}

Metric generalized_mrr(std::span<const TripleKey> ranked,
                       const TripleSet& target, const TripleSet* train) {
  const std::size_t n = train ? count_outside(target, *train) : target.size();
  if (n == 0) return std::nullopt;
  TripleSet seen;
  double num = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const TripleKey& key = ranked[i];
    if (!target.count(key) || (train && train->count(key))) continue;
    if (!seen.insert(key).second) continue;
    num += 1.0 / static_cast<double>(i + 1);
  }
  return num / harmonic(n);
}

Metric relative(const Metric& value, const Metric& reference) {
  if (!value || !reference || *reference <= 0) return std::nullopt;
  return *value / *reference;
}

namespace {

std::vector<TripleKey> dedupe(std::vector<TripleKey> keys) {
  TripleSet seen;
  std::vector<TripleKey> out;
  out.reserve(keys.size());
  for (TripleKey& k : keys) {
    if (seen.insert(k).second) out.push_back(std::move(k));
  }
  return out;
}

}  // namespace

std::vector<TripleKey> ranked_keys(const RankedKB& kb) {
  std::vector<TripleKey> keys;
  keys.reserve(kb.entries.size());
  for (const ScoredClosedTriple& e : kb.entries) {
    keys.push_back(triple_key(e.triple));
  }
  return dedupe(std::move(keys));
}

MetricRow compute_metrics(std::span<const TripleKey> ranked,
                          const TripleSet& target, const TripleSet* train,
                          const EvalOptions& options) {
  const TripleSet trans(ranked.begin(), ranked.end());
  MetricRow row;
  row.r_a = automatic_recall(trans, target);
  row.p_a = automatic_precision(trans, target);
  for (std::size_t k : options.ks) {
    row.p_at_k[k] = precision_at_k(ranked, target, k);
  }
  row.mrr = generalized_mrr(ranked, target);
  if (train) {
    row.r_a_bar = barred_recall(trans, target, *train);
    row.p_a_bar = barred_precision(trans, target, *train);
    if (options.barred_k > 0) {
      row.p_at_k_bar = precision_at_k(ranked, target, options.barred_k, train);
    }
    row.mrr_bar = generalized_mrr(ranked, target, train);
  }
  return row;
}

namespace {

// Unordered normalized (s, o) pair; the relation slot stays empty.
std::optional<TripleKey> pair_key(const std::string& s, const std::string& o,
                                  const Normalizer& normalizer) {
  std::string a = normalizer.normalize(s).render();
  std::string b = normalizer.normalize(o).render();
  if (a.empty() || b.empty()) return std::nullopt;
  if (b < a) std::swap(a, b);
  return TripleKey{std::move(a), std::string(), std::move(b)};
}

TripleSet pair_set(std::span<const ClosedTriple> triples,
                   const Normalizer& normalizer) {
  TripleSet out;
  for (const ClosedTriple& t : triples) {
    if (auto k = pair_key(t.subject, t.object, normalizer)) out.insert(*k);
  }
  return out;
}

}  // namespace

MetricRow reference_metrics(const OpenKB& open_kb, const ClosedKB& target,
                            const std::vector<ClosedTriple>* train,
                            const EvalOptions& options,
                            const Normalizer& normalizer) {
  std::vector<std::size_t> order(open_kb.triples.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return open_kb.triples[a].score > open_kb.triples[b].score;
                   });
  std::vector<TripleKey> ranked;
  ranked.reserve(order.size());
  for (std::size_t i : order) {
    const OpenTriple& t = open_kb.triples[i];
    if (auto k = pair_key(t.subject, t.object, normalizer)) {
      ranked.push_back(std::move(*k));
    }
  }
  ranked = dedupe(std::move(ranked));
  const TripleSet target_pairs = pair_set(target.triples, normalizer);
  std::optional<TripleSet> train_pairs;
  if (train) train_pairs = pair_set(*train, normalizer);
  return compute_metrics(ranked, target_pairs,
                         train_pairs ? &*train_pairs : nullptr, options);
}

EvalReport evaluate(const RankedKB& ranked, const ClosedKB& target,
                    const std::vector<ClosedTriple>* train,
                    const OpenKB* open_kb, const EvalOptions& options,
                    const Normalizer& normalizer) {
  EvalReport report;
  const std::vector<TripleKey> keys = ranked_keys(ranked);
  const TripleSet target_keys = key_set(target.triples);
  std::optional<TripleSet> train_keys;
  if (train) train_keys = key_set(*train);
  report.size = keys.size();
  report.target_size = target_keys.size();
  report.train_size = train_keys ? train_keys->size() : 0;
  report.barred_k = options.barred_k;
  report.absolute = compute_metrics(
      keys, target_keys, train_keys ? &*train_keys : nullptr, options);
  if (open_kb) {
    report.reference =
        reference_metrics(*open_kb, target, train, options, normalizer);
    const MetricRow& a = report.absolute;
    const MetricRow& r = *report.reference;
    MetricRow rel;
    rel.r_a = relative(a.r_a, r.r_a);
    rel.r_a_bar = relative(a.r_a_bar, r.r_a_bar);
    rel.p_a = relative(a.p_a, r.p_a);
    rel.p_a_bar = relative(a.p_a_bar, r.p_a_bar);
    for (const auto& [k, v] : a.p_at_k)
      rel.p_at_k[k] = relative(v, r.p_at_k.at(k));
    rel.p_at_k_bar = relative(a.p_at_k_bar, r.p_at_k_bar);
    rel.mrr = relative(a.mrr, r.mrr);
    rel.mrr_bar = relative(a.mrr_bar, r.mrr_bar);
    report.relative = rel;
  }
  return report;
}

namespace {

nlohmann::json metric_json(const Metric& m) {
  return m ? nlohmann::json(*m) : nlohmann::json("NA");
}

nlohmann::json row_json(const MetricRow& row) {
  nlohmann::json p_at_k = nlohmann::json::object();
  for (const auto& [k, v] : row.p_at_k)
    p_at_k[std::to_string(k)] = metric_json(v);
  return {{"r_a", metric_json(row.r_a)},
          {"r_a_bar", metric_json(row.r_a_bar)},
          {"p_a", metric_json(row.p_a)},
          {"p_a_bar", metric_json(row.p_a_bar)},
          {"p_at_k", p_at_k},
          {"p_at_k_bar", metric_json(row.p_at_k_bar)},
          {"mrr", metric_json(row.mrr)},
          {"mrr_bar", metric_json(row.mrr_bar)}};
}

std::string k_label(std::size_t k) {
  if (k >= 1000 && k % 1000 == 0) return std::to_string(k / 1000) + "k";
  return std::to_string(k);
}

}  // namespace

void write_report_json(const EvalReport& report, std::ostream& out) {
  nlohmann::json j = {{"size", report.size},
                      {"target_size", report.target_size},
                      {"train_size", report.train_size},
                      {"barred_k", report.barred_k},
                      {"absolute", row_json(report.absolute)}};
  if (report.reference) j["reference"] = row_json(*report.reference);
  if (report.relative) j["relative"] = row_json(*report.relative);
  out << j.dump(2) << '\n';
}

void write_report_table(const EvalReport& report, std::ostream& out) {
  std::vector<std::string> header{"", "R_a", "R_a_bar", "P_a", "P_a_bar"};
  for (const auto& [k, v] : report.absolute.p_at_k) {
    header.push_back("P@" + k_label(k));
  }
  header.push_back("P_bar@" + k_label(report.barred_k));
  header.push_back("MRR");
  header.push_back("MRR_bar");
  std::vector<std::vector<std::string>> rows{header};
  auto add = [&](const std::string& name, const MetricRow& r) {
    std::vector<std::string> row{name, format_metric(r.r_a),
                                 format_metric(r.r_a_bar), format_metric(r.p_a),
                                 format_metric(r.p_a_bar)};
    for (const auto& [k, v] : report.absolute.p_at_k) {
      auto it = r.p_at_k.find(k);
      row.push_back(
          format_metric(it == r.p_at_k.end() ? Metric{} : it->second));
    }
    row.push_back(format_metric(r.p_at_k_bar));
    row.push_back(format_metric(r.mrr));
    row.push_back(format_metric(r.mrr_bar));
    rows.push_back(std::move(row));
  };
  add("absolute", report.absolute);
  if (report.reference) add("reference", *report.reference);
  if (report.relative) add("relative", *report.relative);

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  out << "size " << report.size << "  target " << report.target_size
      << "  train " << report.train_size << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      } else {
        out << std::right << std::setw(static_cast<int>(width[c])) << row[c];
      }
    }
    out << '\n';
  }
}

std::vector<SOGroup> group_generations(const std::vector<Generation>& gens) {
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t>
      index;
  std::vector<SOGroup> groups;
  std::vector<std::vector<std::pair<int, std::size_t>>> ranks;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const OpenTriple& s = gens[i].source;
    auto [it, inserted] =
        index.try_emplace({s.subject, s.predicate, s.object}, groups.size());
    if (inserted) {
      groups.push_back({s, {}});
      ranks.emplace_back();
    }
    ranks[it->second].emplace_back(gens[i].rank, i);
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::stable_sort(
        ranks[g].begin(), ranks[g].end(),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [rank, i] : ranks[g]) {
      groups[g].candidates.push_back(gens[i].candidate);
    }
  }
  return groups;
}

SOReport so_conservation(std::span<const SOGroup> groups,
                         const Normalizer& normalizer) {
  std::array<std::array<std::size_t, 3>, 3> counts{};
  for (const SOGroup& g : groups) {
    if (g.candidates.empty()) {
      throw InvalidInput("source '" + serialize_triple(g.source) +
                         "' has no generations");
    }
    const NormalizedPhrase s = normalizer.normalize(g.source.subject);
    const NormalizedPhrase o = normalizer.normalize(g.source.object);
    std::array<bool, 3> any{false, false, false};
    std::array<bool, 3> all{true, true, true};
    std::array<bool, 3> first{};
    for (std::size_t i = 0; i < g.candidates.size(); ++i) {
      const bool keep_s = normalizer.normalize(g.candidates[i].subject) == s;
      const bool keep_o = normalizer.normalize(g.candidates[i].object) == o;
      const std::array<bool, 3> kept{keep_s, keep_o, keep_s && keep_o};
      for (int c = 0; c < 3; ++c) {
        if (i == 0) first[c] = kept[c];
        any[c] = any[c] || kept[c];
        all[c] = all[c] && kept[c];
      }
    }
    for (int c = 0; c < 3; ++c) {
      counts[0][c] += first[c];
      counts[1][c] += any[c];
      counts[2][c] += all[c];
    }
  }
  SOReport report;
  report.groups = groups.size();
  for (int q = 0; q < 3; ++q) {
    for (int c = 0; c < 3; ++c)
      report.cells[q][c] = ratio(counts[q][c], groups.size());
  }
  return report;
}

void write_so_report(const SOReport& report, std::ostream& out) {
  static constexpr const char* kRows[] = {"first", "any", "all"};
  out << "groups " << report.groups << '\n';
  out << std::left << std::setw(6) << "" << std::right << std::setw(8) << "S"
      << std::setw(8) << "O" << std::setw(8) << "SO" << '\n';
  for (int q = 0; q < 3; ++q) {
    out << std::left << std::setw(6) << kRows[q] << std::right;
    for (int c = 0; c < 3; ++c) {
      out << std::setw(8) << format_metric(report.cells[q][c]);
    }
    out << '\n';
  }
}

AlignmentTestMetrics alignment_test_metrics(
    const std::vector<AlignmentPrediction>& predictions,
    const AlignmentSet& gold, const std::vector<std::size_t>& ks) {
  using OpenKey = std::tuple<std::string, std::string, std::string>;
  auto open_key = [](const OpenTriple& t) {
    return OpenKey{t.subject, t.predicate, t.object};
  };
  std::map<OpenKey, TripleSet> gold_sets;
  std::vector<OpenKey> gold_order;
  for (const Alignment& a : gold.alignments) {
    const OpenKey k = open_key(a.open);
    auto [it, inserted] = gold_sets.try_emplace(k);
    if (inserted) gold_order.push_back(k);
    it->second.insert(triple_key(a.closed));
  }
  std::map<OpenKey, const AlignmentPrediction*> by_open;
  for (const AlignmentPrediction& p : predictions) {
    by_open.try_emplace(open_key(p.open), &p);
  }

  AlignmentTestMetrics m;
  m.triples = gold_order.size();
  double rr_sum = 0;
  std::map<std::size_t, double> p_sum, r_sum;
  for (const OpenKey& k : gold_order) {
    const TripleSet& relevant = gold_sets.at(k);
    auto it = by_open.find(k);
    std::vector<TripleKey> ranked;
    if (it != by_open.end()) {
      for (const ClosedTriple& t : it->second->ranked) {
        ranked.push_back(triple_key(t));
      }
    }
    ranked = dedupe(std::move(ranked));
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (relevant.count(ranked[i])) {
        rr_sum += 1.0 / static_cast<double>(i + 1);
        break;
      }
    }
    for (std::size_t kk : ks) {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < std::min(kk, ranked.size()); ++i) {
        hits += relevant.count(ranked[i]);
      }
      if (kk > 0)
        p_sum[kk] += static_cast<double>(hits) / static_cast<double>(kk);
      r_sum[kk] +=
          static_cast<double>(hits) / static_cast<double>(relevant.size());
    }
  }
  const std::size_t n = gold_order.size();
  auto mean = [n](double total) -> Metric {
    if (n == 0) return std::nullopt;
    return total / static_cast<double>(n);
  };
  m.mrr = mean(rr_sum);
  for (std::size_t kk : ks) {
    m.p_at[kk] = kk == 0 ? Metric{} : mean(p_sum[kk]);
    m.r_at[kk] = mean(r_sum[kk]);
  }
  return m;
}

std::vector<AlignmentPrediction> predictions_from_generations(
    const std::vector<Generation>& gens) {
  std::vector<AlignmentPrediction> out;
  for (SOGroup& g : group_generations(gens)) {
    out.push_back({std::move(g.source), std::move(g.candidates)});
  }
  return out;
}

void write_alignment_metrics_json(const AlignmentTestMetrics& m,
                                  std::ostream& out) {
  nlohmann::json p = nlohmann::json::object();
  nlohmann::json r = nlohmann::json::object();
  for (const auto& [k, v] : m.p_at) p[std::to_string(k)] = metric_json(v);
  for (const auto& [k, v] : m.r_at) r[std::to_string(k)] = metric_json(v);
  nlohmann::json j = {{"triples", m.triples},
                      {"mrr", metric_json(m.mrr)},
                      {"p_at", p},
                      {"r_at", r}};
  out << j.dump(2) << '\n';
}

}  // namespace kbmap
