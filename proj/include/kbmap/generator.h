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

// Sequence generators produce, for each prompt, up to k ranked completions
// (beam search output in the real model).

#pragma once

#include <chrono>
#include <span>
#include <string>
#include <vector>

namespace kbmap {

struct Candidate {
  std::string text;
  double score = 0;
  int rank = 0;  // 0-based, contiguous within a prompt

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Implementations must be safe to call concurrently. For each prompt they
// return at most k candidates sorted by rank with ranks 0..n-1.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::vector<std::vector<Candidate>> generate(
      std::span<const std::string> prompts, int k) const = 0;
};

// Throws std::runtime_error if `candidates` breaks the rank contract.
void check_candidates(const std::vector<Candidate>& candidates, int k);

// Echoes "s, CapableOf, p o" for every prompt "s, p, o [SEP] ", as one
// candidate. Output text repeats the prompt, like a causal LM would.
class EchoGenerator : public Generator {
 public:
  std::vector<std::vector<Candidate>> generate(
      std::span<const std::string> prompts, int k) const override;
};

// Template- and hash-driven stand-in for a finetuned model. Each prompt gets
// a deterministic, prompt-dependent mix of plausible closed triples
// (copying, inverting or folding the predicate into the object), plus the
// kinds of junk a real model emits: malformed text, unknown relations,
// subject == object and repeated candidates. Some prompts under-fill k.
class MockGenerator : public Generator {
 public:
  explicit MockGenerator(std::vector<std::string> relations);
  std::vector<std::vector<Candidate>> generate(
      std::span<const std::string> prompts, int k) const override;

 private:
  std::vector<Candidate> complete(const std::string& prompt, int k) const;

  std::vector<std::string> relations_;
};

// Client for the sidecar's generation endpoint:
//   POST /generate {"prompts":[...],"k":k}
//     -> {"results":[{"candidates":[{"text","score","rank"},...]},...]}
class HttpGenerator : public Generator {
 public:
  explicit HttpGenerator(std::string base_url,
                         std::chrono::seconds timeout = std::chrono::seconds(600));
  std::vector<std::vector<Candidate>> generate(
      std::span<const std::string> prompts, int k) const override;

 private:
  std::string base_url_;
  std::chrono::seconds timeout_;
};

}  // namespace kbmap
