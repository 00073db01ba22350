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

#include "kbmap/translator.h"

#include <sstream>
#include <string>
#include <variant>

#include "doctest.h"
#include "kbmap/batching.h"
#include "kbmap/kb_io.h"
#include "support/synthetic.h"

namespace kbmap {
namespace {

const RelationSchema& schema() {
  static const RelationSchema s = conceptnet_schema();
  return s;
}

Alignment fish_alignment() {
  return Alignment::rule({"fish", "live in", "water", 1.0},
                         {"fish", "AtLocation", "water"},
                         AlignPattern::kStandard);
}

TEST_CASE("training example format") {
  CHECK(format_training_example(fish_alignment()) ==
        "fish, live in, water [SEP] fish, AtLocation, water");
  CHECK(format_prompt({"fish", "live in", "water", 1.0}) ==
        "fish, live in, water [SEP] ");
}

TEST_CASE("parse_generation") {
  auto ok = parse_generation(
      "fish, live in, water [SEP] fish, AtLocation, water", schema());
  REQUIRE(std::holds_alternative<ClosedTriple>(ok));
  CHECK(std::get<ClosedTriple>(ok) ==
        ClosedTriple{"fish", "AtLocation", "water"});

  auto reason = [](std::string_view text) {
    auto r = parse_generation(text, schema());
    REQUIRE(std::holds_alternative<Rejection>(r));
    return std::get<Rejection>(r).reason;
  };
  CHECK(reason("x [SEP] fish, AtLocation") == RejectReason::kArity);
  CHECK(reason("fish AtLocation water") == RejectReason::kArity);
  CHECK(reason("a, IsA, b, c") == RejectReason::kUnknownRelation);
  CHECK(reason("fish, LivesIn, water") == RejectReason::kUnknownRelation);
  CHECK(reason(" , AtLocation, water") == RejectReason::kEmptyField);
  CHECK(reason("fish, AtLocation,  ") == RejectReason::kArity);
}

TEST_CASE("round-trip on comma-free alignments") {
  testing::Synth synth(1);
  for (int i = 0; i < 300; ++i) {
    const Alignment a =
        Alignment::rule({synth.comma_free_phrase(), synth.comma_free_phrase(),
                         synth.comma_free_phrase(), 1.0},
                        {synth.comma_free_phrase(), synth.relation(),
                         synth.comma_free_phrase()},
                        AlignPattern::kStandard);
    auto parsed = parse_generation(format_training_example(a), schema());
    REQUIRE(std::holds_alternative<ClosedTriple>(parsed));
    CHECK(std::get<ClosedTriple>(parsed) == a.closed);
  }
}

TEST_CASE("filter drops degenerate and repeated candidates") {
  const OpenTriple src{"water", "be", "wet", 1.0};
  const auto gens =
      filter_generations(src, {{{"water", "RelatedTo", "the Water"}, 0, -1},
                               {{"water", "HasProperty", "wet"}, 2, -3},
                               {{"water", "IsA", "liquid"}, 1, -2},
                               {{"water", "HasProperty", "wet"}, 3, -4}});
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].candidate.relation == "IsA");
  CHECK(gens[0].rank == 1);
  CHECK(gens[1].candidate.relation == "HasProperty");
  CHECK(gens[1].rank == 2);
  CHECK(gens[1].source == src);
}

TEST_CASE("echo generator gives one CapableOf triple per open triple") {
  const OpenKB kb{
      "o",
      {{"elephant", "live in", "Africa", 1.0}, {"dog", "bark", "loudly", 2.0}}};
  const EchoGenerator echo;
  TranslateOptions options;
  options.k = 1;
  const TranslateResult r = translate_kb(kb, echo, schema(), options);
  REQUIRE(r.generations.size() == 2);
  CHECK(r.generations[0].candidate ==
        ClosedTriple{"elephant", "CapableOf", "live in Africa"});
  CHECK(r.generations[1].candidate ==
        ClosedTriple{"dog", "CapableOf", "bark loudly"});
  CHECK(r.stats.kept == 2);
}

TEST_CASE("mock generator output is valid, ranked and stable") {
  testing::Synth synth(8);
  const OpenKB kb = synth.open_kb(120);
  const MockGenerator mock(schema().relations());
  TranslateOptions options;
  options.k = 6;
  const TranslateResult base = translate_kb(kb, mock, schema(), options);
  CHECK(base.stats.candidates == base.stats.kept + base.stats.rejected_arity +
                                     base.stats.rejected_unknown_relation +
                                     base.stats.rejected_empty_field +
                                     base.stats.dropped_degenerate +
                                     base.stats.dropped_duplicate);
  CHECK(base.stats.rejected_arity > 0);
  CHECK(base.stats.rejected_unknown_relation > 0);
  CHECK(base.stats.prompts <= kb.triples.size());
  for (std::size_t i = 0; i < base.generations.size(); ++i) {
    const Generation& g = base.generations[i];
    CHECK(schema().contains(g.candidate.relation));
    CHECK(normalize_phrase(g.candidate.subject) !=
          normalize_phrase(g.candidate.object));
    CHECK(g.rank >= 0);
    CHECK(g.rank < options.k);
    if (i > 0 && base.generations[i - 1].source == g.source) {
      CHECK(base.generations[i - 1].rank < g.rank);
    }
  }
  for (std::size_t batch : {1, 5, 200}) {
    for (std::size_t threads : {1, 8}) {
      TranslateOptions o = options;
      o.batch_size = batch;
      o.max_in_flight = threads;
      CHECK(translate_kb(kb, mock, schema(), o).generations ==
            base.generations);
    }
  }
}

TEST_CASE("generator contract violations are errors") {
  struct Bad : Generator {
    std::vector<std::vector<Candidate>> generate(
        std::span<const std::string> prompts, int) const override {
      return std::vector<std::vector<Candidate>>(prompts.size(),
                                                 {{"a, IsA, b", 0, 1}});
    }
  };
  const OpenKB kb{"o", {{"a", "b", "c", 1.0}}};
  CHECK_THROWS_AS(translate_kb(kb, Bad{}, schema(), {}), BatchError);
  TranslateOptions zero;
  zero.k = 0;
  CHECK_THROWS_AS(translate_kb(kb, EchoGenerator{}, schema(), zero),
                  InvalidInput);
  CHECK_THROWS(check_candidates({{"x", 0, 0}, {"y", 0, 1}}, 1));
}

TEST_CASE("generations round-trip through JSON lines") {
  testing::Synth synth(4);
  const OpenKB kb = synth.open_kb(30);
  const auto gens =
      translate_kb(kb, MockGenerator(schema().relations()), schema(), {})
          .generations;
  testing::TempDir dir;
  save_generations(gens, dir / "g.jsonl");
  CHECK(load_generations(dir / "g.jsonl") == gens);
  testing::write_file(dir / "bad.jsonl", "{}\n");
  CHECK_THROWS_AS(load_generations(dir / "bad.jsonl"), ParseError);
}

}  // namespace
}  // namespace kbmap
