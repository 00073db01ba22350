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

// End-to-end run: align, split, export training data, translate, rank,
// evaluate, then the optional baselines. Every stage reads its inputs from
// disk, so a run can be inspected or resumed stage by stage with the CLI.
//
// Artifacts under output_dir:
//
//   alignments.jsonl  train.jsonl  test.jsonl  train.txt
//   generations.jsonl  ranked.tsv  eval.json  eval.txt
//   alignment_test.json  so_report.txt
//   manual/ranked.tsv  manual/eval.json                 (manual_table set)
//   rulemine/meta_kb.tsv  rulemine/rules.tsv  rulemine/top_tokens.txt
//   rulemine/ranked.tsv  rulemine/eval.json             (rulemine = true)
//   manifest.json

#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbmap/config.h"
#include "kbmap/embedding.h"
#include "kbmap/generator.h"
#include "kbmap/triple.h"

namespace kbmap {

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct Artifact {
  std::string path;  // relative to output_dir
  std::string sha256;
};

struct StageRecord {
  std::string name;
  std::vector<Artifact> artifacts;
};

struct RunResult {
  std::string config_hash;
  std::vector<StageRecord> stages;
  std::filesystem::path manifest;
};

// "mock", "echo" or a sidecar URL.
std::unique_ptr<Generator> make_generator(const std::string& spec,
                                          const RelationSchema& schema,
                                          int timeout_seconds = 600);
std::unique_ptr<EmbeddingProvider> make_embedder(const std::string& spec,
                                                 std::size_t dim = 64,
                                                 int timeout_seconds = 600);

RelationSchema load_schema_or_default(const std::filesystem::path& path);

// Expects a validated config. Throws StageError naming the failed stage;
// artifacts of earlier stages stay on disk.
RunResult run_pipeline(const PipelineConfig& config, std::ostream* log = nullptr);

}  // namespace kbmap
