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

#include "kbmap/generator.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "kbmap/text.h"
#include "sidecar_client.h"
#include "triple_text.h"

namespace kbmap {

namespace {

constexpr std::string_view kSepToken = "[SEP]";

std::string triple_text(const std::string& s, const std::string& r,
                        const std::string& o) {
  return s + ", " + r + ", " + o;
}

}  // namespace

void check_candidates(const std::vector<Candidate>& candidates, int k) {
  if (static_cast<int>(candidates.size()) > k) {
    throw std::runtime_error("generator returned " +
                             std::to_string(candidates.size()) +
                             " candidates for k=" + std::to_string(k));
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].rank != static_cast<int>(i)) {
      throw std::runtime_error("generator ranks are not 0..n-1 in order");
    }
  }
}

std::vector<std::vector<Candidate>> EchoGenerator::generate(
    std::span<const std::string> prompts, int k) const {
  std::vector<std::vector<Candidate>> out(prompts.size());
  if (k < 1) return out;
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    auto fields = split_triple_text(before_last(prompts[i], kSepToken));
    if (!fields) continue;
    const auto& [s, p, o] = *fields;
    out[i].push_back(
        {prompts[i] + triple_text(s, "CapableOf", p + " " + o), 0.0, 0});
  }
  return out;
}

MockGenerator::MockGenerator(std::vector<std::string> relations)
    : relations_(std::move(relations)) {
  if (relations_.empty()) {
    throw std::invalid_argument("mock generator needs at least one relation");
  }
}

std::vector<Candidate> MockGenerator::complete(const std::string& prompt,
                                               int k) const {
  auto fields = split_triple_text(before_last(prompt, kSepToken));
  if (!fields || k < 1) return {};
  const auto& [s, p, o] = *fields;
  const std::uint64_t h = fnv1a64(prompt);
  const std::size_t n_rel = relations_.size();
  auto rel = [&](std::size_t i) -> const std::string& {
    return relations_[(h / 7 + i * 5) % n_rel];
  };
  const bool has_capable = std::find(relations_.begin(), relations_.end(),
                                     "CapableOf") != relations_.end();
  const std::string p_o = p + " " + o;

  std::vector<std::string> completions = {
      triple_text(s, rel(0), o),
      triple_text(s, has_capable ? "CapableOf" : rel(1), p_o),
      triple_text(o, rel(1), s),
      triple_text(s, rel(2), p_o),
      s + ", " + rel(3),  // truncated output
      triple_text(s, rel(4), s),
      triple_text(s, rel(0), o),  // repeat of the first completion
      triple_text(s, "UnknownRelationX", o),
      triple_text(p_o, rel(5), s),
      triple_text(s, rel(6), o),
  };

  // Prompt-dependent order and length.
  std::vector<std::size_t> order(completions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return fnv1a64(prompt + "#" + std::to_string(a)) <
                            fnv1a64(prompt + "#" + std::to_string(b));
                   });
  const std::size_t available = 3 + h % (completions.size() - 2);
  const std::size_t n =
      std::min<std::size_t>(static_cast<std::size_t>(k), available);

  std::vector<Candidate> out;
  out.reserve(n);
  const double jitter = static_cast<double>(h % 1000) / 10000.0;
  for (std::size_t r = 0; r < n; ++r) {
    out.push_back({prompt + completions[order[r]],
                   -0.5 * static_cast<double>(r + 1) - jitter,
                   static_cast<int>(r)});
  }
  return out;
}

std::vector<std::vector<Candidate>> MockGenerator::generate(
    std::span<const std::string> prompts, int k) const {
  std::vector<std::vector<Candidate>> out;
  out.reserve(prompts.size());
  for (const std::string& prompt : prompts) out.push_back(complete(prompt, k));
  return out;
}

HttpGenerator::HttpGenerator(std::string base_url, std::chrono::seconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

std::vector<std::vector<Candidate>> HttpGenerator::generate(
    std::span<const std::string> prompts, int k) const {
  nlohmann::json request;
  request["prompts"] = nlohmann::json::array();
  for (const std::string& p : prompts) request["prompts"].push_back(p);
  request["k"] = k;
  const nlohmann::json response =
      sidecar_post(base_url_, "/generate", request, timeout_);

  if (!response.contains("results") || !response["results"].is_array()) {
    throw SidecarError("/generate response lacks a results array");
  }
  const auto& results = response["results"];
  if (results.size() != prompts.size()) {
    throw SidecarError("/generate returned " + std::to_string(results.size()) +
                       " results for " + std::to_string(prompts.size()) +
                       " prompts");
  }
  std::vector<std::vector<Candidate>> out;
  out.reserve(results.size());
  for (const auto& result : results) {
    std::vector<Candidate> candidates;
    for (const auto& c : result.at("candidates")) {
      candidates.push_back({c.at("text").get<std::string>(),
                            c.value("score", 0.0), c.at("rank").get<int>()});
    }
    try {
      check_candidates(candidates, k);
    } catch (const std::runtime_error& e) {
      throw SidecarError(std::string("/generate: ") + e.what());
    }
    out.push_back(std::move(candidates));
  }
  return out;
}

}  // namespace kbmap
