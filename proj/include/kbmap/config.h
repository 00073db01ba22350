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

// Pipeline configuration. The file format is one `key = value` per line,
// `#` starts a comment. Relative paths are resolved against the directory of
// the config file.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kbmap/alignment.h"
#include "kbmap/scorer.h"

namespace kbmap {

struct PipelineConfig {
  std::filesystem::path open_kb;
  std::filesystem::path closed_kb;
  std::filesystem::path schema;        // empty: bundled ConceptNet relations
  std::filesystem::path taxonomy;      // empty: no ISA atoms
  std::filesystem::path manual_table;  // empty: manual baseline skipped
  std::filesystem::path output_dir = "out";

  AlignMethod align_method = AlignMethod::kRule;
  std::size_t top_k = 10000;
  std::string embedder = "mock";   // "mock" or a sidecar URL
  std::size_t embed_dim = 64;
  std::string generator = "mock";  // "mock", "echo" or a sidecar URL
  int k = 10;
  ScoreMode score_mode = ScoreMode::kCombined;

  double split_ratio = 0.9;
  std::uint64_t seed = 42;

  std::vector<std::size_t> eval_ks{10, 100, 1000, 10000};
  std::size_t barred_k = 10000;

  bool manual_fallback = true;
  bool rulemine = true;
  std::size_t min_support = 20;
  double min_confidence = 0.5;
  std::size_t top_tokens = 100;
  std::size_t isa_min_count = 10;
  double isa_max_fraction = 0.5;

  // Runtime knobs; they never change an artifact.
  std::size_t concurrency = 1;
  std::size_t batch_size = 32;
  int timeout_seconds = 600;
};

// Sets one key. Throws InvalidInput for unknown keys and bad values.
void apply_setting(PipelineConfig& config, const std::string& key,
                   const std::string& value,
                   const std::filesystem::path& base_dir = {});

// Throws ParseError with the line number.
PipelineConfig parse_config(std::istream& in,
                            const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

// Every key, in a fixed order, as written by the config parser.
std::vector<std::pair<std::string, std::string>> config_entries(
    const PipelineConfig& config);

// Throws InvalidInput when a referenced file is missing or a value is out of
// range.
void validate(const PipelineConfig& config);

// SHA-256 over the entries that can influence an artifact (everything but
// output_dir and the runtime knobs).
std::string config_hash(const PipelineConfig& config);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace kbmap
