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

#include "kbmap/kb_io.h"

#include <sstream>
#include <string>

#include "doctest.h"
#include "kbmap/closed_index.h"
#include "support/synthetic.h"

namespace kbmap {
namespace {

RelationSchema small_schema() {
  return RelationSchema({"AtLocation", "CapableOf", "IsA"}, {"AtLocation"});
}

TEST_CASE("open KB rows") {
  std::istringstream in("fish\tlive in\twater\t3.5\n\nbird\tfly\tsky\r\n");
  const OpenKB kb = parse_open_kb(in, "t");
  REQUIRE(kb.triples.size() == 2);
  CHECK(kb.triples[0] == OpenTriple{"fish", "live in", "water", 3.5});
  CHECK(kb.triples[1] == OpenTriple{"bird", "fly", "sky", 1.0});
}

TEST_CASE("open KB errors carry the line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_open_kb(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("a\tb\tc\nonly\ttwo\n") == 2);
  CHECK(line_of("a\tb\tc\td\te\n") == 1);
  CHECK(line_of("a\t \tc\n") == 1);
  CHECK(line_of("a\tb\tc\t-1\n") == 1);
  CHECK(line_of("a\tb\tc\tabc\n") == 1);
}

TEST_CASE("open KB round-trips through TSV") {
  testing::Synth synth(3);
  const OpenKB kb = synth.open_kb(200);
  std::ostringstream out;
  write_open_kb(kb, out);
  std::istringstream in(out.str());
  const OpenKB back = parse_open_kb(in);
  REQUIRE(back.triples.size() == kb.triples.size());
  for (std::size_t i = 0; i < kb.triples.size(); ++i) {
    CHECK(back.triples[i] == kb.triples[i]);
  }
}

TEST_CASE("closed KB filtering") {
  std::istringstream in(
      "fish\tAtLocation\twater\n"
      "fish\tLivesIn\twater\n"
      "Fish\tAtLocation\tthe water\n"
      "water\tIsA\tthe Water\n"
      "dog\tCapableOf\tbark\n");
  const ClosedKBLoad load = parse_closed_kb(in, small_schema());
  CHECK(load.kb.triples.size() == 2);
  CHECK(load.unknown_relation == 1);
  CHECK(load.duplicates == 1);
  CHECK(load.degenerate == 1);
  CHECK(load.kb.triples[0] == ClosedTriple{"fish", "AtLocation", "water"});
}

TEST_CASE("closed KB rejects malformed rows") {
  std::istringstream in("fish\tAtLocation\n");
  CHECK_THROWS_AS(parse_closed_kb(in, small_schema()), ParseError);
}

TEST_CASE("schema parsing") {
  std::istringstream in("# comment\nRelatedTo\n!AtLocation\n\nIsA\n");
  const RelationSchema schema = parse_schema(in);
  CHECK(schema.relations() ==
        std::vector<std::string>{"RelatedTo", "AtLocation", "IsA"});
  CHECK(schema.invertible("AtLocation"));
  CHECK_FALSE(schema.invertible("IsA"));
  CHECK(schema.has_inverse_markers());

  std::istringstream dup("IsA\nIsA\n");
  CHECK_THROWS_AS(parse_schema(dup), ParseError);
  std::istringstream spaced("Is A\n");
  CHECK_THROWS_AS(parse_schema(spaced), ParseError);
  CHECK_THROWS_AS(RelationSchema({"IsA"}, {"PartOf"}), InvalidInput);
  CHECK_THROWS_AS(RelationSchema({""}), InvalidInput);
}

TEST_CASE("bundled ConceptNet schema") {
  const RelationSchema schema = conceptnet_schema();
  CHECK(schema.size() == 35);
  CHECK(schema.contains("CapableOf"));
  CHECK(schema.contains("AtLocation"));
  CHECK(schema.invertible("AtLocation"));
}

TEST_CASE("closed index lookups") {
  const ClosedKB kb = make_closed_kb("t",
                                     {{"fish", "AtLocation", "water"},
                                      {"the fish", "CapableOf", "swim"},
                                      {"Fishes", "IsA", "animal"}},
                                     small_schema())
                          .kb;
  const ClosedIndex index = ClosedIndex::build(kb);
  CHECK(index.size() == 3);
  auto hits = index.by_so("fish", "water");
  REQUIRE(hits.size() == 1);
  CHECK(index.triple(hits[0]) == kb.triples[0]);
  CHECK(index.by_s("fish").size() == 3);
  CHECK(index.by_so("water", "fish").empty());
}

TEST_CASE("every indexed triple is retrievable by its own keys") {
  testing::Synth synth(5);
  const OpenKB open = synth.open_kb(100);
  const ClosedKB kb = synth.closed_kb(open, 300);
  const ClosedIndex index = ClosedIndex::build(kb);
  CHECK(index.size() == kb.triples.size());
  for (std::size_t i = 0; i < kb.triples.size(); ++i) {
    const auto s = normalize_phrase(kb.triples[i].subject).render();
    const auto o = normalize_phrase(kb.triples[i].object).render();
    auto hits = index.by_so(s, o);
    CHECK(std::find(hits.begin(), hits.end(), i) != hits.end());
  }
}

TEST_CASE("open triple validation") {
  CHECK_NOTHROW(validate(OpenTriple{"a", "b", "c", 0.0}));
  CHECK_THROWS_AS(validate(OpenTriple{"a", " ", "c", 1.0}), InvalidInput);
  CHECK_THROWS_AS(validate(OpenTriple{"a", "b", "c", -1.0}), InvalidInput);
}

TEST_CASE("triple serialization") {
  CHECK(serialize_triple(OpenTriple{"fish", "live in", "water", 1}) ==
        "fish, live in, water");
  CHECK(serialize_triple(ClosedTriple{"fish", "AtLocation", "water"}) ==
        "fish, AtLocation, water");
}

}  // namespace
}  // namespace kbmap
