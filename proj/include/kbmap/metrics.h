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

// Automatic evaluation against a target closed KB. A metric whose
// denominator is zero is std::nullopt and prints as NA.

#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "kbmap/alignment.h"
#include "kbmap/normalize.h"
#include "kbmap/scorer.h"
#include "kbmap/translator.h"
#include "kbmap/triple.h"

namespace kbmap {

using Metric = std::optional<double>;

std::string format_metric(const Metric& m);

// Trimmed, ASCII-lowercased (s, r, o).
using TripleKey = std::tuple<std::string, std::string, std::string>;
TripleKey triple_key(const ClosedTriple& t);
using TripleSet = std::set<TripleKey>;
TripleSet key_set(std::span<const ClosedTriple> triples);

// |trans ∩ target| / |target|
Metric automatic_recall(const TripleSet& trans, const TripleSet& target);
// |trans ∩ target| / |trans|
Metric automatic_precision(const TripleSet& trans, const TripleSet& target);
// |trans ∩ (target - D)| / |target - D|
Metric barred_recall(const TripleSet& trans, const TripleSet& target,
                     const TripleSet& train);
// |(trans - D) ∩ target| / |trans - D|
Metric barred_precision(const TripleSet& trans, const TripleSet& target,
                        const TripleSet& train);

// Precision over the first min(k, n) entries of a ranked list of keys.
// With `train`, entries in D are removed before taking the top k.
Metric precision_at_k(std::span<const TripleKey> ranked, const TripleSet& target,
                      std::size_t k, const TripleSet* train = nullptr);

// Σ 1/i over 1-based positions i whose entry is in target' (first occurrence
// only), divided by H(|target'|), target' = target - D when `train` is set.
// Positions count every ranked entry, including those in D.
Metric generalized_mrr(std::span<const TripleKey> ranked, const TripleSet& target,
                       const TripleSet* train = nullptr);

Metric relative(const Metric& value, const Metric& reference);

std::vector<TripleKey> ranked_keys(const RankedKB& kb);

struct EvalOptions {
  std::vector<std::size_t> ks{10, 100, 1000, 10000};
  // K for the barred precision; 0 disables it.
  std::size_t barred_k = 10000;
};

struct MetricRow {
  Metric r_a, r_a_bar, p_a, p_a_bar;
  std::map<std::size_t, Metric> p_at_k;
  Metric p_at_k_bar;
  Metric mrr, mrr_bar;
};

struct EvalReport {
  std::size_t size = 0;
  std::size_t target_size = 0;
  std::size_t train_size = 0;
  std::size_t barred_k = 0;
  MetricRow absolute;
  std::optional<MetricRow> reference;  // open KB, relations ignored
  std::optional<MetricRow> relative;
};

MetricRow compute_metrics(std::span<const TripleKey> ranked,
                          const TripleSet& target, const TripleSet* train,
                          const EvalOptions& options);

// The reference run ignores relations: open triples (by score, ties in input
// order) and the target are reduced to unordered normalized (s, o) pairs.
MetricRow reference_metrics(const OpenKB& open_kb, const ClosedKB& target,
                            const std::vector<ClosedTriple>* train,
                            const EvalOptions& options,
                            const Normalizer& normalizer = Normalizer::builtin());

// `train` is the closed side of the training alignments, if any.
EvalReport evaluate(const RankedKB& ranked, const ClosedKB& target,
                    const std::vector<ClosedTriple>* train,
                    const OpenKB* open_kb, const EvalOptions& options = {},
                    const Normalizer& normalizer = Normalizer::builtin());

void write_report_json(const EvalReport& report, std::ostream& out);
void write_report_table(const EvalReport& report, std::ostream& out);

// Subject / object conservation over the generations of each source.

struct SOGroup {
  OpenTriple source;
  std::vector<ClosedTriple> candidates;  // in rank order, at least one
};

// Groups by source (s, p, o) in first-seen order, candidates by rank.
std::vector<SOGroup> group_generations(const std::vector<Generation>& gens);

struct SOReport {
  std::size_t groups = 0;
  // [quantifier: first, any, all][column: S, O, SO]
  std::array<std::array<Metric, 3>, 3> cells{};
};

// S conserved iff normalize(candidate.s) == normalize(source.s), O likewise,
// SO iff both hold for the same generation. Throws InvalidInput on an empty
// group.
SOReport so_conservation(std::span<const SOGroup> groups,
                         const Normalizer& normalizer = Normalizer::builtin());

void write_so_report(const SOReport& report, std::ostream& out);

// Held-out alignment evaluation.

struct AlignmentPrediction {
  OpenTriple open;
  std::vector<ClosedTriple> ranked;
};

struct AlignmentTestMetrics {
  std::size_t triples = 0;
  Metric mrr;
  std::map<std::size_t, Metric> p_at;
  std::map<std::size_t, Metric> r_at;
};

// Macro averages over the distinct open triples in `gold`; a gold triple
// with no prediction scores zero everywhere.
AlignmentTestMetrics alignment_test_metrics(
    const std::vector<AlignmentPrediction>& predictions,
    const AlignmentSet& gold, const std::vector<std::size_t>& ks = {1, 5, 10});

std::vector<AlignmentPrediction> predictions_from_generations(
    const std::vector<Generation>& gens);

void write_alignment_metrics_json(const AlignmentTestMetrics& m,
                                  std::ostream& out);

}  // namespace kbmap
