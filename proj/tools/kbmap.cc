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

// kbmap: map an open KB onto a closed schema, one stage at a time or all at
// once with `kbmap run --config run.conf`.
//
// Exit status: 0 success, 1 invalid input or config, 2 stage failure.

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kbmap/alignment.h"
#include "kbmap/closed_index.h"
#include "kbmap/config.h"
#include "kbmap/kb_io.h"
#include "kbmap/knn_aligner.h"
#include "kbmap/manual_mapping.h"
#include "kbmap/metrics.h"
#include "kbmap/pipeline.h"
#include "kbmap/rule_aligner.h"
#include "kbmap/rule_mining.h"
#include "kbmap/scorer.h"
#include "kbmap/split.h"
#include "kbmap/taxonomy.h"
#include "kbmap/text.h"
#include "kbmap/translator.h"

namespace {

using namespace kbmap;

constexpr int kExitInvalid = 1;
constexpr int kExitStage = 2;

std::vector<std::string> read_lines(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::unique_ptr<Taxonomy> taxonomy_or_empty(const std::string& path) {
  if (path.empty()) return std::make_unique<EmptyTaxonomy>();
  return std::make_unique<TsvTaxonomy>(load_taxonomy(path));
}

// Loading problems are the caller's fault (exit 1); anything that fails
// once inputs are in memory is a stage failure (exit 2).
struct Command {
  CLI::App* app;
  std::function<void()> load;
  std::function<void()> execute;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Map open-KB triples onto a closed relation schema"};
  app.require_subcommand(1);
  std::vector<Command> commands;
  auto add = [&](CLI::App* sub, std::function<void()> load,
                 std::function<void()> execute) {
    commands.push_back({sub, std::move(load), std::move(execute)});
  };

  // Shared state, filled by whichever subcommand runs.
  std::string open_path, closed_path, schema_path, out_path, taxonomy_path;
  RelationSchema schema = conceptnet_schema();
  OpenKB open_kb;
  ClosedKB closed_kb;

  // align-rules
  auto* align_rules =
      app.add_subcommand("align-rules", "Rule-based alignment (four patterns)");
  align_rules->add_option("--open", open_path, "Open KB TSV")->required();
  align_rules->add_option("--closed", closed_path, "Closed KB TSV")->required();
  align_rules->add_option("--schema", schema_path, "Relation schema");
  align_rules->add_option("-o,--out", out_path, "Alignments JSONL")->required();
  add(
      align_rules,
      [&] {
        schema = load_schema_or_default(schema_path);
        open_kb = load_open_kb(open_path);
        closed_kb = load_closed_kb(closed_path, schema).kb;
      },
      [&] {
        const AlignmentSet set =
            align_rule_based(open_kb, ClosedIndex::build(closed_kb));
        save_alignments(set, out_path);
        std::cerr << set.size() << " alignments\n";
      });

  // align-embed
  std::string provider = "mock";
  bool inverse = false;
  KnnOptions knn;
  std::size_t dim = 64;
  auto* align_embed =
      app.add_subcommand("align-embed", "Nearest-neighbour alignment");
  align_embed->add_option("--open", open_path, "Open KB TSV")->required();
  align_embed->add_option("--closed", closed_path, "Closed KB TSV")->required();
  align_embed->add_option("--schema", schema_path, "Relation schema");
  align_embed->add_option("--provider", provider, "mock or sidecar URL");
  align_embed->add_option("--dim", dim, "Mock embedding size");
  align_embed->add_option("--top-k", knn.top_k, "Alignments kept");
  align_embed->add_flag("--inverse", inverse, "Search from closed to open");
  align_embed->add_option("--batch-size", knn.batch_size, "Texts per request");
  align_embed->add_option("--concurrency", knn.max_in_flight,
                          "Requests in flight");
  align_embed->add_option("-o,--out", out_path, "Alignments JSONL")->required();
  add(
      align_embed,
      [&] {
        schema = load_schema_or_default(schema_path);
        open_kb = load_open_kb(open_path);
        closed_kb = load_closed_kb(closed_path, schema).kb;
        if (knn.top_k == 0 || knn.batch_size == 0 || knn.max_in_flight == 0) {
          throw InvalidInput("top-k, batch-size and concurrency must be > 0");
        }
      },
      [&] {
        knn.direction = inverse ? AlignDirection::kClosedToOpen
                                : AlignDirection::kOpenToClosed;
        auto embedder = make_embedder(provider, dim);
        const AlignmentSet set = knn_align(open_kb, closed_kb, *embedder, knn);
        save_alignments(set, out_path);
        std::cerr << set.size() << " alignments\n";
      });

  // split
  std::string alignments_path, train_out, test_out;
  double ratio = 0.9;
  std::uint64_t seed = 42;
  AlignmentSet alignments;
  auto* split_cmd =
      app.add_subcommand("split", "Train/test split by open triple");
  split_cmd->add_option("--alignments", alignments_path)->required();
  split_cmd->add_option("--ratio", ratio, "Train fraction in (0, 1)");
  split_cmd->add_option("--seed", seed);
  split_cmd->add_option("--train-out", train_out)->required();
  split_cmd->add_option("--test-out", test_out)->required();
  add(
      split_cmd,
      [&] {
        if (!(ratio > 0 && ratio < 1)) {
          throw InvalidInput("--ratio must be in (0, 1)");
        }
        alignments = load_alignments(alignments_path);
      },
      [&] {
        auto [train, test] = split_alignments(alignments, ratio, seed);
        save_alignments(train, train_out);
        save_alignments(test, test_out);
        std::cerr << train.size() << " train, " << test.size() << " test\n";
      });

  // export-train
  auto* export_cmd =
      app.add_subcommand("export-train", "Training lines for the generator");
  export_cmd->add_option("--alignments", alignments_path)->required();
  export_cmd->add_option("--seed", seed);
  export_cmd->add_option("-o,--out", out_path)->required();
  add(
      export_cmd, [&] { alignments = load_alignments(alignments_path); },
      [&] {
        auto out = open_output(out_path);
        for (const auto& line : training_lines(alignments, seed)) {
          out << line << '\n';
        }
      });

  // translate
  std::string generator_spec = "mock";
  TranslateOptions translate_options;
  auto* translate_cmd =
      app.add_subcommand("translate", "Generate closed triples");
  translate_cmd->add_option("--open", open_path)->required();
  translate_cmd->add_option("--schema", schema_path);
  translate_cmd->add_option("--generator", generator_spec,
                            "mock, echo or sidecar URL");
  translate_cmd->add_option("-k", translate_options.k,
                            "Generations per triple");
  translate_cmd->add_option("--batch-size", translate_options.batch_size);
  translate_cmd->add_option("--concurrency", translate_options.max_in_flight);
  translate_cmd->add_option("-o,--out", out_path, "Generations JSONL")
      ->required();
  add(
      translate_cmd,
      [&] {
        schema = load_schema_or_default(schema_path);
        open_kb = load_open_kb(open_path);
        if (translate_options.k < 1) throw InvalidInput("k must be >= 1");
      },
      [&] {
        auto generator = make_generator(generator_spec, schema);
        const TranslateResult r =
            translate_kb(open_kb, *generator, schema, translate_options);
        save_generations(r.generations, out_path);
        std::cerr << r.stats.kept << " generations kept of "
                  << r.stats.candidates << "\n";
      });

  // rank
  std::string generations_path;
  std::string mode_name = "combined";
  std::vector<Generation> generations;
  auto* rank_cmd = app.add_subcommand("rank", "Aggregate generations");
  rank_cmd->add_option("--generations", generations_path)->required();
  rank_cmd->add_option("--mode", mode_name, "combined, weight_only, rank_only");
  rank_cmd->add_option("-o,--out", out_path, "Ranked KB TSV")->required();
  add(
      rank_cmd,
      [&] {
        parse_score_mode(mode_name);
        generations = load_generations(generations_path);
      },
      [&] {
        save_ranked_kb(aggregate(generations, parse_score_mode(mode_name)),
                       out_path);
      });

  // eval
  std::string ranked_path, target_path, exclude_path, json_path, gold_path;
  std::vector<std::size_t> ks{10, 100, 1000, 10000};
  std::size_t barred_k = 10000;
  RankedKB ranked;
  std::optional<std::vector<ClosedTriple>> exclude;
  bool with_open = false;
  auto* eval_cmd = app.add_subcommand("eval", "Automatic metrics");
  eval_cmd->add_option("--ranked", ranked_path, "Ranked KB TSV")->required();
  eval_cmd->add_option("--target", target_path, "Target closed KB")->required();
  eval_cmd->add_option("--schema", schema_path);
  eval_cmd->add_option("--exclude-train", exclude_path,
                       "Training alignments (D_train)");
  eval_cmd->add_option("--open", open_path, "Open KB for relative metrics");
  eval_cmd->add_option("--ks", ks, "Cutoffs for P@K")->delimiter(',');
  eval_cmd->add_option("--barred-k", barred_k);
  eval_cmd->add_option("--json", json_path, "Also write the report as JSON");
  eval_cmd->add_option("--generations", generations_path,
                       "Generations for held-out alignment metrics");
  eval_cmd->add_option("--gold", gold_path, "Held-out alignments");
  add(
      eval_cmd,
      [&] {
        schema = load_schema_or_default(schema_path);
        ranked = load_ranked_kb(ranked_path);
        closed_kb = load_closed_kb(target_path, schema).kb;
        if (!exclude_path.empty()) {
          exclude.emplace();
          for (const Alignment& a : load_alignments(exclude_path).alignments) {
            exclude->push_back(a.closed);
          }
        }
        with_open = !open_path.empty();
        if (with_open) open_kb = load_open_kb(open_path);
        if (generations_path.empty() != gold_path.empty()) {
          throw InvalidInput("--generations and --gold go together");
        }
        if (!generations_path.empty()) {
          generations = load_generations(generations_path);
          alignments = load_alignments(gold_path);
        }
      },
      [&] {
        EvalOptions options;
        options.ks = ks;
        options.barred_k = barred_k;
        const EvalReport report =
            evaluate(ranked, closed_kb, exclude ? &*exclude : nullptr,
                     with_open ? &open_kb : nullptr, options);
        write_report_table(report, std::cout);
        if (!json_path.empty()) {
          auto out = open_output(json_path);
          write_report_json(report, out);
        }
        if (!generations_path.empty()) {
          write_alignment_metrics_json(
              alignment_test_metrics(predictions_from_generations(generations),
                                     alignments),
              std::cout);
        }
      });

  // mine-rules
  MetaKBOptions meta_options;
  MineOptions mine_options;
  std::string meta_out, tokens_out;
  auto* mine_cmd = app.add_subcommand("mine-rules", "Rule-mining baseline");
  mine_cmd->add_option("--alignments", alignments_path, "Rule alignments JSONL")
      ->required();
  mine_cmd->add_option("--open", open_path)->required();
  mine_cmd->add_option("--taxonomy", taxonomy_path, "term<TAB>hypernym TSV");
  mine_cmd->add_option("--min-support", mine_options.min_support);
  mine_cmd->add_option("--min-confidence", mine_options.min_confidence);
  mine_cmd->add_option("--top-tokens", meta_options.top_tokens);
  mine_cmd->add_option("--isa-min-count", meta_options.isa_min_count);
  mine_cmd->add_option("--isa-max-fraction",
                       meta_options.isa_max_mapping_fraction);
  mine_cmd->add_option("--meta-kb", meta_out, "Write the meta-KB facts");
  mine_cmd->add_option("--tokens-out", tokens_out, "Write the top tokens");
  mine_cmd->add_option("-o,--out", out_path, "Rules TSV")->required();
  std::unique_ptr<Taxonomy> taxonomy;
  add(
      mine_cmd,
      [&] {
        alignments = load_alignments(alignments_path);
        open_kb = load_open_kb(open_path);
        taxonomy = taxonomy_or_empty(taxonomy_path);
        if (mine_options.min_support < 1) {
          throw InvalidInput("min-support must be >= 1");
        }
      },
      [&] {
        const MetaKB meta =
            build_meta_kb(alignments, *taxonomy, open_kb, meta_options);
        const auto rules = mine_rules(meta, mine_options);
        save_rules(rules, out_path);
        if (!meta_out.empty()) {
          auto out = open_output(meta_out);
          write_meta_kb(meta, out);
        }
        if (!tokens_out.empty()) {
          auto out = open_output(tokens_out);
          for (const auto& t : meta.top_tokens) out << t << '\n';
        }
        std::cerr << meta.mappings.size() << " mappings, " << rules.size()
                  << " rules\n";
      });

  // apply-rules
  std::string rules_path, tokens_path, candidates_out;
  std::vector<Rule> rules;
  std::vector<std::string> top_tokens;
  auto* apply_cmd = app.add_subcommand("apply-rules", "Apply mined rules");
  apply_cmd->add_option("--rules", rules_path)->required();
  apply_cmd->add_option("--open", open_path)->required();
  apply_cmd->add_option("--taxonomy", taxonomy_path);
  apply_cmd->add_option("--tokens", tokens_path,
                        "Top tokens from mine-rules (default: recomputed)");
  apply_cmd->add_option("--candidates", candidates_out,
                        "Write candidates with provenance");
  apply_cmd->add_option("-o,--out", out_path, "Ranked KB TSV")->required();
  add(
      apply_cmd,
      [&] {
        rules = load_rules(rules_path);
        open_kb = load_open_kb(open_path);
        taxonomy = taxonomy_or_empty(taxonomy_path);
        top_tokens = tokens_path.empty() ? top_predicate_tokens(open_kb, 100)
                                         : read_lines(tokens_path);
      },
      [&] {
        const auto candidates =
            apply_rules(rules, open_kb, *taxonomy, top_tokens);
        save_ranked_kb(rank_rule_candidates(candidates), out_path);
        if (!candidates_out.empty()) {
          auto out = open_output(candidates_out);
          for (const RuleCandidate& c : candidates) {
            out << c.triple.subject << '\t' << c.triple.relation << '\t'
                << c.triple.object << '\t' << format_double(c.score) << '\t'
                << c.rule_index << '\t' << c.open_index << '\n';
          }
        }
      });

  // map-manual
  std::string table_path;
  bool no_fallback = false;
  std::optional<ManualTable> table;
  auto* manual_cmd =
      app.add_subcommand("map-manual", "Manual mapping baseline");
  manual_cmd->add_option("--open", open_path)->required();
  manual_cmd
      ->add_option("--table", table_path, "predicate<TAB>relation[<TAB>inv]")
      ->required();
  manual_cmd->add_option("--schema", schema_path);
  manual_cmd->add_flag("--no-fallback", no_fallback,
                       "Drop triples whose predicate is not in the table");
  manual_cmd->add_option("-o,--out", out_path, "Ranked KB TSV")->required();
  add(
      manual_cmd,
      [&] {
        schema = load_schema_or_default(schema_path);
        open_kb = load_open_kb(open_path);
        table.emplace(load_manual_table(table_path, schema));
      },
      [&] {
        const auto r = map_manual_kb(open_kb, *table, !no_fallback);
        save_ranked_kb(rank_manual(r), out_path);
        std::cerr << "coverage " << format_double(r.coverage()) << "\n";
      });

  // so-report
  auto* so_cmd = app.add_subcommand("so-report", "Subject/object conservation");
  so_cmd->add_option("--generations", generations_path)->required();
  add(
      so_cmd, [&] { generations = load_generations(generations_path); },
      [&] {
        write_so_report(so_conservation(group_generations(generations)),
                        std::cout);
      });

  // run
  std::string config_path;
  std::vector<std::string> overrides;
  PipelineConfig config;
  bool quiet = false;
  auto* run_cmd =
      app.add_subcommand("run", "Whole pipeline from a config file");
  run_cmd->add_option("--config", config_path, "key = value file");
  run_cmd->add_option("--set", overrides, "key=value override (repeatable)");
  run_cmd->add_flag("-q,--quiet", quiet, "No stage log");
  add(
      run_cmd,
      [&] {
        if (!config_path.empty()) config = load_config(config_path);
        for (const std::string& o : overrides) {
          const auto eq = o.find('=');
          if (eq == std::string::npos) {
            throw InvalidInput("--set expects key=value, got '" + o + "'");
          }
          apply_setting(config, o.substr(0, eq), o.substr(eq + 1));
        }
        validate(config);
      },
      [&] {
        const RunResult r = run_pipeline(config, quiet ? nullptr : &std::cerr);
        std::cout << r.manifest.string() << '\n';
      });

  const Command* chosen = nullptr;
  try {
    app.parse(argc, argv);
    for (const Command& c : commands) {
      if (c.app->parsed()) chosen = &c;
    }
    if (!chosen) return kExitInvalid;
    chosen->load();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  } catch (const ParseError& e) {
    std::cerr << "error: line " << e.line() << ": " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  try {
    chosen->execute();
  } catch (const std::exception& e) {
    std::cerr << "stage failed: " << e.what() << '\n';
    return kExitStage;
  }
  return 0;
}
