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

#include "support/synthetic.h"

#include <unistd.h>

#include <atomic>
#include <cctype>
#include <fstream>
#include <sstream>

#include "kbmap/kb_io.h"

namespace kbmap::testing {

namespace {

const std::vector<std::string> kNouns{
    "fish",  "ocean",  "sea",   "bird",  "nest",  "tree",  "leaf",  "dog",
    "cat",   "house",  "roof",  "water", "river", "sun",   "rain",  "cloud",
    "child", "school", "knife", "bread", "flour", "stone", "wheel", "car"};
const std::vector<std::string> kAdjectives{"big", "small", "blue", "old",
                                           "wild"};
const std::vector<std::string> kPredicates{
    "live in",    "lives in",    "contain",  "contains", "swim in", "be",
    "is",         "have",        "has",      "eat",      "eats",    "causes",
    "be made of", "be used for", "fly over", "go to"};
const std::vector<std::string> kRelations{
    "AtLocation", "CapableOf", "IsA",    "HasA",    "Causes",
    "MadeOf",     "UsedFor",   "PartOf", "Desires", "RelatedTo"};
const std::vector<std::string> kWords{
    "alpha",    "beta",        "gamma",        "delta", "x1",
    "route 66", "caf\xc3\xa9", "na\xc3\xafve", "ABC",   "q"};

std::string plural(const std::string& noun) {
  if (noun == "child") return "children";
  if (noun == "leaf") return "leaves";
  if (noun == "knife") return "knives";
  if (noun == "fish") return "fish";
  if (noun.back() == 'h' || noun.back() == 's') return noun + "es";
  return noun + "s";
}

}  // namespace

std::string Synth::noun_phrase() {
  std::string noun = pick(kNouns);
  if (coin(0.25)) noun = plural(noun);
  std::string out;
  const std::size_t article = below(6);
  if (article == 0) out = "the ";
  if (article == 1) out = "a ";
  if (coin(0.15)) out += pick(kAdjectives) + " ";
  out += noun;
  if (coin(0.1)) out[0] = static_cast<char>(std::toupper(out[0]));
  if (coin(0.05)) out += ".";
  return out;
}

std::string Synth::predicate() { return pick(kPredicates); }
std::string Synth::relation() { return pick(kRelations); }

OpenTriple Synth::open_triple() {
  OpenTriple t{noun_phrase(), predicate(), noun_phrase(), 1.0};
  t.score = static_cast<double>(below(1000)) / 100.0;
  return t;
}

OpenKB Synth::open_kb(std::size_t n) {
  OpenKB kb;
  kb.name = "synthetic-open";
  while (kb.triples.size() < n) {
    if (!kb.triples.empty() && coin(0.05)) {
      kb.triples.push_back(pick(kb.triples));
    } else {
      kb.triples.push_back(open_triple());
    }
  }
  return kb;
}

ClosedKB Synth::closed_kb(const OpenKB& open, std::size_t n) {
  std::vector<ClosedTriple> triples;
  while (triples.size() < n) {
    if (!open.triples.empty() && coin(0.5)) {
      const OpenTriple& t = pick(open.triples);
      const std::string r = relation();
      switch (below(4)) {
        case 0:
          triples.push_back({t.subject, r, t.object});
          break;
        case 1:
          triples.push_back({t.object, r, t.subject});
          break;
        case 2:
          triples.push_back({t.subject, r, t.predicate + " " + t.object});
          break;
        default:
          triples.push_back({t.predicate + " " + t.object, r, t.subject});
          break;
      }
      // Re-spell one side so matching has to normalize.
      if (coin(0.3)) triples.back().subject = "The " + triples.back().subject;
    } else {
      triples.push_back({noun_phrase(), relation(), noun_phrase()});
    }
  }
  return make_closed_kb("synthetic-closed", std::move(triples),
                        conceptnet_schema())
      .kb;
}

MiningData Synth::mining_data(std::size_t mappings) {
  static const std::vector<std::string> relations{"AtLocation", "Causes",
                                                  "HasA", "CapableOf"};
  static const std::vector<std::string> hypernyms{
      "animal.n.01", "place.n.01", "object.n.01", "body_of_water.n.01",
      "food.n.01"};
  MiningData data;
  for (std::size_t i = 0; i < 8; ++i) {
    std::vector<std::string> hs;
    for (const std::string& h : hypernyms) {
      if (coin(0.3)) hs.push_back(h);
    }
    data.taxonomy[kNouns[i]] = hs;
  }
  auto noun = [&] {
    std::string n = kNouns[below(8)];
    if (coin(0.2)) n = pick(kAdjectives) + " " + n;
    return n;
  };
  while (data.alignments.size() < mappings) {
    const std::string s = noun();
    std::string o = noun();
    const std::string p = pick(kPredicates);
    const std::string r = pick(relations);
    OpenTriple open{s, p, o, 1.0 + static_cast<double>(below(3))};
    ClosedTriple closed;
    AlignPattern pattern;
    switch (below(5)) {
      case 0:
        pattern = AlignPattern::kReverse;
        closed = {o, r, s};
        break;
      case 1:
        pattern = AlignPattern::kPredInObject;
        closed = {s, r, p + " " + o};
        break;
      case 2:
        pattern = AlignPattern::kReversePredInObject;
        closed = {p + " " + o, r, s};
        break;
      default:
        pattern = AlignPattern::kStandard;
        closed = {s, r, o};
        break;
    }
    // The closed side may drop an adjective the open side carries.
    if (coin(0.2)) {
      auto pos = closed.subject.rfind(' ');
      if (pos != std::string::npos)
        closed.subject = closed.subject.substr(pos + 1);
    }
    data.open.triples.push_back(open);
    data.alignments.alignments.push_back(
        Alignment::rule(std::move(open), std::move(closed), pattern));
  }
  // Unaligned open triples still count toward predicate tokens.
  for (std::size_t i = 0; i < mappings / 2; ++i) {
    data.open.triples.push_back({noun(), pick(kPredicates), noun(), 1.0});
  }
  return data;
}

std::string Synth::comma_free_phrase() {
  const std::size_t n = 1 + below(4);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += " ";
    out += coin(0.5) ? pick(kWords) : pick(kNouns);
  }
  return out;
}

namespace {
std::atomic<int> temp_counter{0};
}

TempDir::TempDir() {
  path_ = std::filesystem::temp_directory_path() /
          ("kbmap-test-" + std::to_string(::getpid()) + "-" +
           std::to_string(temp_counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace kbmap::testing
