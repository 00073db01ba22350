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

// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "kbmap/closed_index.h"
#include "kbmap/kb_io.h"
#include "kbmap/knn_aligner.h"
#include "kbmap/metrics.h"
#include "kbmap/pipeline.h"
#include "kbmap/rule_aligner.h"
#include "kbmap/rule_mining.h"
#include "kbmap/scorer.h"
#include "kbmap/translator.h"
#include "support/oracles.h"
#include "support/synthetic.h"

namespace kbmap {
namespace {

using testing::Key;
using testing::Synth;

// Collects the first few failures of one criterion.
class Verdict {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { info_ += (info_.empty() ? "" : ", ") + s; }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::string out = std::to_string(checks_) + " checks";
    if (!info_.empty()) out += ", " + info_;
    if (!ok()) out += ", " + std::to_string(failures_) + " failed: " + notes_;
    return out;
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string notes_, info_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void time_limit(Verdict& v, Clock::time_point start, double limit) {
  const double s = seconds_since(start);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  v.note(buf);
  v.expect(s < limit, "took " + std::string(buf));
}

bool close(const Metric& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::abs(*a - *b) <= 1e-9;
}

ClosedKB closed_of(std::vector<ClosedTriple> triples) {
  return make_closed_kb("closed", std::move(triples), conceptnet_schema()).kb;
}

// 1. Final score against the naive loop.
void scorer_oracle(Verdict& v) {
  const auto start = Clock::now();
  Synth synth(1001);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Contribution> c(1 + synth.below(30));
    for (auto& x : c) {
      x.open_score = synth.real(0, 10);
      x.rank = static_cast<int>(synth.below(20));
    }
    for (ScoreMode mode :
         {ScoreMode::kCombined, ScoreMode::kWeightOnly, ScoreMode::kRankOnly}) {
      v.expect(
          std::abs(final_score(c, mode) -
                   testing::naive_final_score(c, mode)) <= 1e-9,
          "set " + std::to_string(i) + " mode " + std::string(to_string(mode)));
    }
  }
  const std::vector<Contribution> worked{{2.0, 0}, {1.0, 1}};
  v.expect(final_score(worked, ScoreMode::kCombined) == 2.5, "worked case");
  time_limit(v, start, 1.0);
}

// 2. Rule aligner against the brute-force matcher.
void rule_aligner_equivalence(Verdict& v) {
  const auto start = Clock::now();
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Synth synth(2000 + seed);
    const OpenKB open = synth.open_kb(10 + seed * 10);
    const ClosedKB closed = synth.closed_kb(open, 10 + seed * 10);
    const AlignmentSet set = align_rule_based(open, ClosedIndex::build(closed));
    std::set<testing::RuleMatch> got;
    for (const Alignment& a : set.alignments) {
      got.insert({a.open, a.closed, *a.pattern});
    }
    v.expect(got.size() == set.size(),
             "duplicate alignment, seed " + std::to_string(seed));
    v.expect(got == testing::brute_force_rule_alignments(open, closed),
             "seed " + std::to_string(seed));
    total += set.size();
  }
  v.note(std::to_string(total) + " alignments");
  time_limit(v, start, 30.0);
}

// 3. The three introductory mappings.
void intro_patterns(Verdict& v) {
  const OpenKB open{"open",
                    {{"fish", "live in", "the ocean", 1},
                     {"ocean", "contain", "fish", 1},
                     {"fish", "swim in", "the ocean", 1}}};
  const ClosedKB closed =
      closed_of({{"fish", "AtLocation", "ocean"},
                 {"fish", "CapableOf", "swim in the ocean"}});
  const AlignmentSet set = align_rule_based(open, ClosedIndex::build(closed));
  auto has = [&](const OpenTriple& o, const ClosedTriple& c, AlignPattern p) {
    return std::any_of(set.alignments.begin(), set.alignments.end(),
                       [&](const Alignment& a) {
                         return a.open == o && a.closed == c && a.pattern == p;
                       });
  };
  v.expect(has(open.triples[0], closed.triples[0], AlignPattern::kStandard),
           "live in -> standard");
  v.expect(has(open.triples[1], closed.triples[0], AlignPattern::kReverse),
           "contain -> reverse");
  v.expect(has(open.triples[2], closed.triples[1], AlignPattern::kPredInObject),
           "swim in -> pred_in_obj");
}

// 4. k-NN against exhaustive search.
void knn_equivalence(Verdict& v) {
  const auto start = Clock::now();
  const MockEmbeddingProvider provider(32);
  std::size_t ties = 0, truncated = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Synth synth(4000 + i);
    const std::size_t n = 20 + 9 * i;
    OpenKB open = synth.open_kb(n);
    const ClosedKB closed = synth.closed_kb(open, n);
    // Open triples that serialize like closed ones, and verbatim repeats.
    for (std::size_t j = 0; j < n / 10 && !closed.triples.empty(); ++j) {
      const ClosedTriple& c = synth.pick(closed.triples);
      open.triples[synth.below(n)] = {c.subject, c.relation, c.object, 1.0};
      open.triples[synth.below(n)] = open.triples[synth.below(n)];
    }
    for (bool inverse : {false, true}) {
      KnnOptions options;
      options.direction = inverse ? AlignDirection::kClosedToOpen
                                  : AlignDirection::kOpenToClosed;
      options.top_k = i % 2 ? n / 2 : 10000;
      options.batch_size = 1 + i;
      options.max_in_flight = 1 + i % 4;
      const AlignmentSet set = knn_align(open, closed, provider, options);
      const auto rows = testing::exhaustive_knn(open, closed, provider, inverse,
                                                options.top_k);
      const std::string tag =
          "instance " + std::to_string(i) + (inverse ? " inverse" : "");
      v.expect(set.size() == rows.size(), tag + " size");
      if (set.size() != rows.size()) continue;
      if (rows.size() == options.top_k) ++truncated;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const Alignment& a = set.alignments[r];
        const std::size_t oi = inverse ? rows[r].target : rows[r].source;
        const std::size_t ci = inverse ? rows[r].source : rows[r].target;
        v.expect(a.open == open.triples[oi] && a.closed == closed.triples[ci] &&
                     a.distance && *a.distance == rows[r].distance,
                 tag + " row " + std::to_string(r));
        if (r && rows[r].distance == rows[r - 1].distance) ++ties;
      }
    }
  }
  v.expect(ties > 0, "no tied distances exercised");
  v.expect(truncated > 0, "no truncation exercised");
  v.note(std::to_string(ties) + " ties");
  time_limit(v, start, 10.0);
}

// 5. Metrics against the oracles, plus the hand cases.
void metric_oracles(Verdict& v) {
  Synth synth(5000);
  auto key = [](std::size_t i) -> Key {
    return {"e" + std::to_string(i), "r", "x"};
  };
  for (int round = 0; round < 200; ++round) {
    auto sample = [&](std::size_t n, std::size_t universe) {
      std::vector<Key> out;
      for (std::size_t i = 0; i < n; ++i)
        out.push_back(key(synth.below(universe)));
      return out;
    };
    const std::size_t universe = 5 + synth.below(80);
    const auto ranked = sample(synth.below(100), universe);
    const auto target = sample(synth.below(50), universe);
    const auto train = sample(synth.below(25), universe);
    const TripleSet trans_s(ranked.begin(), ranked.end()),
        target_s(target.begin(), target.end()),
        train_s(train.begin(), train.end());
    const std::string tag = "round " + std::to_string(round);
    v.expect(close(automatic_recall(trans_s, target_s),
                   testing::oracle_recall(ranked, target, {})),
             tag + " R_a");
    v.expect(close(automatic_precision(trans_s, target_s),
                   testing::oracle_precision(ranked, target, {})),
             tag + " P_a");
    v.expect(close(barred_recall(trans_s, target_s, train_s),
                   testing::oracle_recall(ranked, target, train)),
             tag + " barred R_a");
    v.expect(close(barred_precision(trans_s, target_s, train_s),
                   testing::oracle_precision(ranked, target, train)),
             tag + " barred P_a");
    for (std::size_t k : {1, 5, 10, 1000}) {
      v.expect(close(precision_at_k(ranked, target_s, k),
                     testing::oracle_precision_at(ranked, target, k, {})),
               tag + " P@" + std::to_string(k));
      v.expect(close(precision_at_k(ranked, target_s, k, &train_s),
                     testing::oracle_precision_at(ranked, target, k, train)),
               tag + " barred P@" + std::to_string(k));
    }
    v.expect(close(generalized_mrr(ranked, target_s),
                   testing::oracle_mrr(ranked, target, {})),
             tag + " MRR");
    v.expect(close(generalized_mrr(ranked, target_s, &train_s),
                   testing::oracle_mrr(ranked, target, train)),
             tag + " barred MRR");

    // Alignment test metrics over per-query gold sets.
    const std::vector<std::size_t> ks{1, 5, 10};
    AlignmentSet gold;
    std::vector<AlignmentPrediction> preds;
    std::vector<std::vector<Key>> ranked_q, gold_q;
    const std::size_t queries = 1 + synth.below(12);
    for (std::size_t q = 0; q < queries; ++q) {
      const OpenTriple open{"s" + std::to_string(q), "p", "o", 1};
      auto closed = [&] {
        return ClosedTriple{"c" + std::to_string(synth.below(10)), "r", "x"};
      };
      std::vector<Key> gk, rk;
      for (std::size_t i = 0, n = 1 + synth.below(3); i < n; ++i) {
        const ClosedTriple c = closed();
        gold.alignments.push_back(
            Alignment::rule(open, c, AlignPattern::kStandard));
        gk.push_back(triple_key(c));
      }
      AlignmentPrediction p{open, {}};
      for (std::size_t i = 0, n = synth.below(15); i < n; ++i) {
        p.ranked.push_back(closed());
        rk.push_back(triple_key(p.ranked.back()));
      }
      if (synth.coin(0.9)) {
        preds.push_back(p);
      } else {
        rk.clear();
      }
      ranked_q.push_back(rk);
      gold_q.push_back(gk);
    }
    const auto m = alignment_test_metrics(preds, gold, ks);
    const auto o = testing::oracle_alignment_metrics(ranked_q, gold_q, ks);
    v.expect(close(m.mrr, o.mrr), tag + " alignment MRR");
    for (std::size_t i = 0; i < ks.size(); ++i) {
      v.expect(close(m.p_at.at(ks[i]), o.p_at[i]), tag + " alignment P@K");
      v.expect(close(m.r_at.at(ks[i]), o.r_at[i]), tag + " alignment R@K");
    }
  }
  const Key x{"x", "r", "y"}, t1{"t1", "r", "y"}, t2{"t2", "r", "y"};
  const std::vector<Key> xt{x, t1}, tt{t1, t2};
  v.expect(generalized_mrr(xt, TripleSet{t1}) == 0.5, "[x,t] -> 0.5");
  v.expect(generalized_mrr(tt, TripleSet{t1, t2}) == 1.0, "[t1,t2] -> 1.0");
}

SOGroup so_group(OpenTriple source, std::vector<ClosedTriple> candidates) {
  return {std::move(source), std::move(candidates)};
}

// 6. SO conservation invariants and hand counts.
void so_conservation_checks(Verdict& v) {
  Synth synth(6000);
  for (int round = 0; round < 100; ++round) {
    std::vector<Generation> gens;
    for (std::size_t s = 0, n = 1 + synth.below(25); s < n; ++s) {
      const OpenTriple src = synth.open_triple();
      for (std::size_t r = 0, m = 1 + synth.below(6); r < m; ++r) {
        const ClosedTriple c{synth.coin() ? src.subject : synth.noun_phrase(),
                             synth.relation(),
                             synth.coin() ? src.object : synth.noun_phrase()};
        gens.push_back({src, c, static_cast<int>(r), 0.0});
      }
    }
    std::shuffle(gens.begin(), gens.end(), synth.rng());
    const SOReport r = so_conservation(group_generations(gens));
    const std::string tag = "round " + std::to_string(round);
    for (int c = 0; c < 3; ++c) {
      v.expect(*r.cells[2][c] <= *r.cells[0][c], tag + " all <= first");
      v.expect(*r.cells[0][c] <= *r.cells[1][c], tag + " first <= any");
    }
    for (int q = 0; q < 3; ++q) {
      v.expect(*r.cells[q][2] <= std::min(*r.cells[q][0], *r.cells[q][1]),
               tag + " SO <= min(S, O)");
    }
  }

  const OpenTriple fish{"fish", "live in", "the ocean", 1};
  using Cells = std::array<std::array<double, 3>, 3>;
  auto matches = [](const SOReport& r, const Cells& want) {
    for (int q = 0; q < 3; ++q) {
      for (int c = 0; c < 3; ++c) {
        if (!r.cells[q][c] || std::abs(*r.cells[q][c] - want[q][c]) > 1e-12) {
          return false;
        }
      }
    }
    return true;
  };
  v.expect(matches(so_conservation(std::vector<SOGroup>{
                       so_group(fish, {{"fish", "AtLocation", "ocean"},
                                       {"Fish", "Desires", "oceans"}})}),
                   Cells{{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}}),
           "verbatim copies");
  v.expect(matches(so_conservation(std::vector<SOGroup>{
                       so_group(fish, {{"water", "AtLocation", "sea"},
                                       {"fish", "Desires", "food"}})}),
                   Cells{{{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}}),
           "second generation keeps S");
  v.expect(matches(so_conservation(std::vector<SOGroup>{
                       so_group({"elephant", "be in", "africa killed", 1},
                                {{"elephant", "AtLocation", "africa"}})}),
                   Cells{{{1, 0, 0}, {1, 0, 0}, {1, 0, 0}}}),
           "object only partly copied");
  v.expect(matches(so_conservation(std::vector<SOGroup>{
                       so_group(fish, {{"fish", "Desires", "food"},
                                       {"shark", "AtLocation", "ocean"}}),
                       so_group({"dog", "bark at", "cat", 1},
                                {{"dog", "CapableOf", "bark at cat"}})}),
                   Cells{{{1, 0, 0}, {1, 0.5, 0}, {0.5, 0, 0}}}),
           "S and O in different generations");
  v.expect(
      matches(
          so_conservation(std::vector<SOGroup>{
              so_group(fish, {{"fish", "AtLocation", "ocean"}}),
              so_group({"bird", "fly over", "the sea", 1},
                       {{"sea", "AtLocation", "bird"},
                        {"bird", "CapableOf", "fly"}}),
              so_group({"cat", "eat", "mice", 1}, {{"dog", "Desires", "bone"}}),
              so_group({"sun", "cause", "heat", 1},
                       {{"sun", "Causes", "heat"},
                        {"sun", "Causes", "heat wave"}})}),
          Cells{{{0.5, 0.5, 0.5}, {0.75, 0.5, 0.5}, {0.5, 0.25, 0.25}}}),
      "four groups");
}

// The synthetic dataset for the causal rule: every "cause" mapping is a
// standard Causes mapping, the rest use other predicates and relations.
MetaKB causal_meta_kb() {
  Synth synth(7100);
  const std::vector<std::string> nouns{"sun",   "rain",  "fire", "smoke",
                                       "virus", "fever", "wind", "storm"};
  const std::vector<std::pair<std::string, std::string>> others{
      {"live in", "AtLocation"},
      {"have", "HasA"},
      {"can swim in", "CapableOf"}};
  OpenKB open{"open", {}};
  AlignmentSet set;
  for (int i = 0; i < 40; ++i) {
    const std::string s = synth.pick(nouns) + " " + std::to_string(i);
    const std::string o = synth.pick(nouns) + " x" + std::to_string(i);
    std::string p = "cause", r = "Causes";
    if (i % 2) std::tie(p, r) = synth.pick(others);
    if (i % 4 == 2) p = "causes";
    const OpenTriple t{s, p, o, 1.0};
    open.triples.push_back(t);
    set.alignments.push_back(
        Alignment::rule(t, {s, r, o}, AlignPattern::kStandard));
  }
  return build_meta_kb(set, EmptyTaxonomy(), open, {20, 1, 0.5});
}

// 7. Rule miner against brute-force counting.
void rule_miner_oracle(Verdict& v) {
  std::size_t mined = 0, candidates = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Synth synth(7000 + seed);
    const auto data = synth.mining_data(20 + 3 * seed);
    const MetaKB meta = build_meta_kb(
        data.alignments, TsvTaxonomy(data.taxonomy), data.open, {20, 2, 0.5});
    const MineOptions options{0.5, 2};
    const auto rules = mine_rules(meta, options);
    const testing::MetaKBOracle oracle(meta);
    const std::string tag = "seed " + std::to_string(seed);
    std::set<std::string> mined_text;
    for (const Rule& r : rules) {
      const auto c = oracle.count(r);
      v.expect(r.support == c.support && r.body_support == c.body,
               tag + " counts of " + r.text());
      v.expect(c.body > 0 && std::abs(r.confidence -
                                      static_cast<double>(c.support) /
                                          static_cast<double>(c.body)) <= 1e-12,
               tag + " confidence of " + r.text());
      v.expect(r.confidence > 0.5, tag + " confidence <= 0.5");
      v.expect(r.well_formed(), tag + " ill-formed " + r.text());
      mined_text.insert(r.text());
    }
    // Completeness: every qualifying rule of the enumerated shapes is mined.
    for (const auto& group : oracle.candidate_rules()) {
      for (const Rule& r : group) {
        ++candidates;
        const auto c = oracle.count(r);
        const bool qualifies =
            c.support >= options.min_support && c.body > 0 &&
            static_cast<double>(c.support) / static_cast<double>(c.body) > 0.5;
        if (qualifies) {
          v.expect(mined_text.count(r.text()) > 0,
                   tag + " missing " + r.text());
        }
      }
    }
    mined += rules.size();
  }
  const auto rules = mine_rules(causal_meta_kb(), {0.5, 5});
  const auto it = std::find_if(rules.begin(), rules.end(), [](const Rule& r) {
    return r.text() ==
           "?i CONTAINS cause ∧ ?i INOBJ ?b ∧ ?i INSUBJ ?a ⇒ ?a Causes ?b";
  });
  v.expect(it != rules.end() && it->confidence == 1.0, "causal rule at 1.0");
  v.note(std::to_string(mined) + " rules vs " + std::to_string(candidates) +
         " candidates");
}

std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[std::filesystem::relative(e.path(), root).string()] =
          testing::read_file(e.path());
    }
  }
  return files;
}

// 8. Byte-identical artifacts across runs and concurrency limits.
void end_to_end_determinism(Verdict& v) {
  const auto start = Clock::now();
  testing::TempDir dir;
  Synth synth(8000);
  const OpenKB open = synth.open_kb(100);
  save_open_kb(open, dir / "open.tsv");
  save_closed_kb(synth.closed_kb(open, 150), dir / "closed.tsv");
  PipelineConfig c;
  c.open_kb = dir / "open.tsv";
  c.closed_kb = dir / "closed.tsv";
  c.k = 5;
  c.split_ratio = 0.8;
  c.min_support = 2;
  c.isa_min_count = 1;
  c.eval_ks = {1, 10, 100};
  c.barred_k = 100;
  c.manual_table = KBMAP_SOURCE_DIR "/data/demo/manual_table.tsv";
  validate(c);
  std::vector<std::map<std::string, std::string>> runs;
  for (std::size_t concurrency : {1, 1, 8}) {
    c.concurrency = concurrency;
    c.batch_size = concurrency == 8 ? 7 : 32;
    c.output_dir = dir / ("run" + std::to_string(runs.size()));
    run_pipeline(c);
    runs.push_back(snapshot(c.output_dir));
  }
  v.note(std::to_string(runs[0].size()) + " files");
  v.expect(runs[0].size() >= 18, "missing artifacts");
  v.expect(runs[0] == runs[1], "two runs differ");
  v.expect(runs[0] == runs[2], "concurrency 1 vs 8 differ");
  time_limit(v, start, 60.0);
}

// 9. Training format round-trip.
void round_trip(Verdict& v) {
  Synth synth(9000);
  const RelationSchema schema = conceptnet_schema();
  const auto& rels = schema.relations();
  for (int i = 0; i < 1000; ++i) {
    const Alignment a = Alignment::rule(
        {synth.comma_free_phrase(), synth.comma_free_phrase(),
         synth.comma_free_phrase(), 1.0},
        {synth.comma_free_phrase(), rels[synth.below(rels.size())],
         synth.comma_free_phrase()},
        AlignPattern::kStandard);
    const auto parsed = parse_generation(format_training_example(a), schema);
    v.expect(std::holds_alternative<ClosedTriple>(parsed) &&
                 std::get<ClosedTriple>(parsed) == a.closed,
             "case " + std::to_string(i));
  }
}

}  // namespace
}  // namespace kbmap

int main() {
  using kbmap::Verdict;
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>>
      criteria{
          {"final score matches the naive oracle", kbmap::scorer_oracle},
          {"rule aligner equals brute force", kbmap::rule_aligner_equivalence},
          {"introductory mapping patterns", kbmap::intro_patterns},
          {"k-NN aligner equals exhaustive search", kbmap::knn_equivalence},
          {"metrics match the oracles", kbmap::metric_oracles},
          {"SO conservation invariants and hand cases",
           kbmap::so_conservation_checks},
          {"rule miner matches brute-force counting", kbmap::rule_miner_oracle},
          {"end-to-end determinism", kbmap::end_to_end_determinism},
          {"training format round-trip", kbmap::round_trip},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      run(v);
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s (%s)\n", v.ok() ? "PASS" : "FAIL", name,
                v.summary().c_str());
    if (!v.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
