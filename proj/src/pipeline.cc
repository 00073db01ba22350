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

#include "kbmap/pipeline.h"

#include <chrono>
#include <ostream>

#include "json.hpp"
#include "kbmap/closed_index.h"
#include "kbmap/kb_io.h"
#include "kbmap/knn_aligner.h"
#include "kbmap/manual_mapping.h"
#include "kbmap/metrics.h"
#include "kbmap/rule_aligner.h"
#include "kbmap/rule_mining.h"
#include "kbmap/split.h"
#include "kbmap/text.h"
#include "kbmap/translator.h"

namespace kbmap {

std::unique_ptr<Generator> make_generator(const std::string& spec,
                                          const RelationSchema& schema,
                                          int timeout_seconds) {
  if (spec == "mock") return std::make_unique<MockGenerator>(schema.relations());
  if (spec == "echo") return std::make_unique<EchoGenerator>();
  return std::make_unique<HttpGenerator>(spec,
                                         std::chrono::seconds(timeout_seconds));
}

std::unique_ptr<EmbeddingProvider> make_embedder(const std::string& spec,
                                                 std::size_t dim,
                                                 int timeout_seconds) {
  if (spec == "mock") return std::make_unique<MockEmbeddingProvider>(dim);
  return std::make_unique<HttpEmbeddingProvider>(
      spec, std::chrono::seconds(timeout_seconds));
}

RelationSchema load_schema_or_default(const std::filesystem::path& path) {
  return path.empty() ? conceptnet_schema() : load_schema(path);
}

namespace {

class Runner {
 public:
  Runner(const PipelineConfig& config, std::ostream* log)
      : config_(config), log_(log) {}

  template <typename Fn>
  void stage(const std::string& name, Fn&& fn) {
    if (log_) *log_ << "[" << name << "]\n";
    current_ = {name, {}};
    try {
      fn();
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(name, e.what());
    }
    result_.stages.push_back(std::move(current_));
  }

  // Path under output_dir, recorded with its checksum once written.
  std::filesystem::path out(const std::string& rel) {
    return config_.output_dir / rel;
  }
  void record(const std::string& rel) {
    current_.artifacts.push_back({rel, sha256_file(out(rel))});
  }

  void note(const std::string& line) {
    if (log_) *log_ << "  " << line << '\n';
  }

  RunResult& result() { return result_; }

 private:
  const PipelineConfig& config_;
  std::ostream* log_;
  StageRecord current_;
  RunResult result_;
};

std::vector<ClosedTriple> closed_side(const AlignmentSet& set) {
  std::vector<ClosedTriple> out;
  out.reserve(set.size());
  for (const Alignment& a : set.alignments) out.push_back(a.closed);
  return out;
}

void save_report(const EvalReport& report, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_report_json(report, out);
}

}  // namespace

RunResult run_pipeline(const PipelineConfig& config, std::ostream* log) {
  Runner run(config, log);
  run.result().config_hash = config_hash(config);

  RelationSchema schema = conceptnet_schema();
  OpenKB open_kb;
  ClosedKB closed_kb;
  run.stage("load", [&] {
    schema = load_schema_or_default(config.schema);
    open_kb = load_open_kb(config.open_kb);
    ClosedKBLoad loaded = load_closed_kb(config.closed_kb, schema);
    closed_kb = std::move(loaded.kb);
    run.note("open triples " + std::to_string(open_kb.triples.size()));
    run.note("closed triples " + std::to_string(closed_kb.triples.size()) +
             " (dropped: unknown relation " +
             std::to_string(loaded.unknown_relation) + ", duplicate " +
             std::to_string(loaded.duplicates) + ", degenerate " +
             std::to_string(loaded.degenerate) + ")");
  });

  std::optional<ClosedIndex> index;
  auto rule_alignments = [&] {
    if (!index) index = ClosedIndex::build(closed_kb);
    return align_rule_based(open_kb, *index);
  };

  AlignmentSet alignments;
  run.stage("align", [&] {
    if (config.align_method == AlignMethod::kRule) {
      alignments = rule_alignments();
    } else {
      auto embedder = make_embedder(config.embedder, config.embed_dim,
                                    config.timeout_seconds);
      KnnOptions options;
      options.direction = config.align_method == AlignMethod::kEmbedInverse
                              ? AlignDirection::kClosedToOpen
                              : AlignDirection::kOpenToClosed;
      options.top_k = config.top_k;
      options.batch_size = config.batch_size;
      options.max_in_flight = config.concurrency;
      alignments = knn_align(open_kb, closed_kb, *embedder, options);
    }
    save_alignments(alignments, run.out("alignments.jsonl"));
    run.record("alignments.jsonl");
    run.note("alignments " + std::to_string(alignments.size()));
  });

  AlignmentSet train, test;
  run.stage("split", [&] {
    std::tie(train, test) = split_alignments(
        load_alignments(run.out("alignments.jsonl")), config.split_ratio,
        config.seed);
    save_alignments(train, run.out("train.jsonl"));
    save_alignments(test, run.out("test.jsonl"));
    run.record("train.jsonl");
    run.record("test.jsonl");
    run.note("train " + std::to_string(train.size()) + ", test " +
             std::to_string(test.size()));
  });

  run.stage("export-train", [&] {
    auto out = open_output(run.out("train.txt"));
    for (const std::string& line :
         training_lines(load_alignments(run.out("train.jsonl")), config.seed)) {
      out << line << '\n';
    }
    out.close();
    run.record("train.txt");
  });

  run.stage("translate", [&] {
    auto generator =
        make_generator(config.generator, schema, config.timeout_seconds);
    TranslateOptions options;
    options.k = config.k;
    options.batch_size = config.batch_size;
    options.max_in_flight = config.concurrency;
    TranslateResult result = translate_kb(open_kb, *generator, schema, options);
    save_generations(result.generations, run.out("generations.jsonl"));
    run.record("generations.jsonl");
    const TranslateStats& s = result.stats;
    run.note("prompts " + std::to_string(s.prompts) + ", candidates " +
             std::to_string(s.candidates) + ", kept " + std::to_string(s.kept));
  });

  RankedKB ranked;
  run.stage("rank", [&] {
    ranked = aggregate(load_generations(run.out("generations.jsonl")),
                       config.score_mode);
    save_ranked_kb(ranked, run.out("ranked.tsv"));
    run.record("ranked.tsv");
    run.note("ranked triples " + std::to_string(ranked.entries.size()));
  });

  EvalOptions eval_options;
  eval_options.ks = config.eval_ks;
  eval_options.barred_k = config.barred_k;
  const std::vector<ClosedTriple> train_closed = closed_side(train);

  run.stage("eval", [&] {
    const RankedKB loaded = load_ranked_kb(run.out("ranked.tsv"));
    const EvalReport report =
        evaluate(loaded, closed_kb, &train_closed, &open_kb, eval_options);
    save_report(report, run.out("eval.json"));
    {
      auto out = open_output(run.out("eval.txt"));
      write_report_table(report, out);
    }
    const auto gens = load_generations(run.out("generations.jsonl"));
    {
      auto out = open_output(run.out("alignment_test.json"));
      write_alignment_metrics_json(
          alignment_test_metrics(predictions_from_generations(gens), test), out);
    }
    {
      const auto groups = group_generations(gens);
      auto out = open_output(run.out("so_report.txt"));
      write_so_report(so_conservation(groups), out);
    }
    run.record("eval.json");
    run.record("eval.txt");
    run.record("alignment_test.json");
    run.record("so_report.txt");
  });

  if (!config.manual_table.empty()) {
    run.stage("map-manual", [&] {
      const ManualTable table = load_manual_table(config.manual_table, schema);
      const ManualMappingResult mapped =
          map_manual_kb(open_kb, table, config.manual_fallback);
      const RankedKB manual = rank_manual(mapped);
      save_ranked_kb(manual, run.out("manual/ranked.tsv"));
      save_report(evaluate(manual, closed_kb, &train_closed, &open_kb,
                           eval_options),
                  run.out("manual/eval.json"));
      run.record("manual/ranked.tsv");
      run.record("manual/eval.json");
      run.note("table coverage " + format_double(mapped.coverage()));
    });
  }

  if (config.rulemine) {
    run.stage("rulemine", [&] {
      std::unique_ptr<Taxonomy> taxonomy;
      if (config.taxonomy.empty()) {
        taxonomy = std::make_unique<EmptyTaxonomy>();
      } else {
        taxonomy = std::make_unique<TsvTaxonomy>(load_taxonomy(config.taxonomy));
      }
      // The meta-KB needs rule alignments whatever the main method was.
      const AlignmentSet mined_from =
          config.align_method == AlignMethod::kRule ? train
                                                    : split_alignments(
                                                          rule_alignments(),
                                                          config.split_ratio,
                                                          config.seed)
                                                          .first;
      MetaKBOptions meta_options;
      meta_options.top_tokens = config.top_tokens;
      meta_options.isa_min_count = config.isa_min_count;
      meta_options.isa_max_mapping_fraction = config.isa_max_fraction;
      const MetaKB meta =
          build_meta_kb(mined_from, *taxonomy, open_kb, meta_options);
      MineOptions mine_options;
      mine_options.min_confidence = config.min_confidence;
      mine_options.min_support = config.min_support;
      const std::vector<Rule> rules = mine_rules(meta, mine_options);
      {
        auto out = open_output(run.out("rulemine/meta_kb.tsv"));
        write_meta_kb(meta, out);
      }
      save_rules(rules, run.out("rulemine/rules.tsv"));
      {
        auto out = open_output(run.out("rulemine/top_tokens.txt"));
        for (const std::string& t : meta.top_tokens) out << t << '\n';
      }
      const RankedKB mined = rank_rule_candidates(
          apply_rules(rules, open_kb, *taxonomy, meta.top_tokens));
      save_ranked_kb(mined, run.out("rulemine/ranked.tsv"));
      save_report(evaluate(mined, closed_kb, &train_closed, &open_kb,
                           eval_options),
                  run.out("rulemine/eval.json"));
      for (const char* rel :
           {"rulemine/meta_kb.tsv", "rulemine/rules.tsv", "rulemine/top_tokens.txt",
            "rulemine/ranked.tsv", "rulemine/eval.json"}) {
        run.record(rel);
      }
      run.note("mappings " + std::to_string(meta.mappings.size()) + ", rules " +
               std::to_string(rules.size()));
    });
  }

  RunResult& result = run.result();
  result.manifest = config.output_dir / "manifest.json";
  nlohmann::json stages = nlohmann::json::array();
  for (const StageRecord& s : result.stages) {
    nlohmann::json artifacts = nlohmann::json::array();
    for (const Artifact& a : s.artifacts) {
      artifacts.push_back({{"path", a.path}, {"sha256", a.sha256}});
    }
    stages.push_back({{"name", s.name}, {"artifacts", artifacts}});
  }
  nlohmann::json manifest = {{"config_hash", result.config_hash},
                             {"stages", stages}};
  auto out = open_output(result.manifest);
  out << manifest.dump(2) << '\n';
  return result;
}

}  // namespace kbmap
