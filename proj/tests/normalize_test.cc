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

#include "kbmap/normalize.h"

#include <fstream>
#include <string>

#include "doctest.h"
#include "kbmap/text.h"
#include "support/synthetic.h"

namespace kbmap {
namespace {

using Tokens = std::vector<std::string>;

TEST_CASE("tokenize lowercases and splits on punctuation") {
  CHECK(tokenize("The Ocean's edge, again.") ==
        Tokens{"the", "ocean", "s", "edge", "again"});
  CHECK(tokenize("  ") == Tokens{});
  CHECK(tokenize("caf\xc3\xa9 x1") == Tokens{"caf\xc3\xa9", "x1"});
}

TEST_CASE("normalize drops stopwords and lemmatizes") {
  CHECK(normalize_phrase("the ocean").tokens == Tokens{"ocean"});
  CHECK(normalize_phrase("The Oceans").tokens == Tokens{"ocean"});
  CHECK(normalize_phrase("lives in").tokens == Tokens{"live"});
  CHECK(normalize_phrase("swimming").tokens == Tokens{"swim"});
  CHECK(normalize_phrase("making").tokens == Tokens{"make"});
  CHECK(normalize_phrase("boxes").tokens == Tokens{"box"});
  CHECK(normalize_phrase("berries").tokens == Tokens{"berry"});
  CHECK(normalize_phrase("children").tokens == Tokens{"child"});
  CHECK(normalize_phrase("glass").tokens == Tokens{"glass"});
  CHECK(normalize_phrase("is a").empty());
  CHECK(normalize_phrase("is a").render() == "");
}

TEST_CASE("lemmas keep stopwords") {
  const Normalizer& n = Normalizer::builtin();
  CHECK(n.lemmas("is in the") == Tokens{"be", "in", "the"});
  CHECK(n.lemmas("Causes") == Tokens{"cause"});
}

TEST_CASE("contains_subsequence needs a contiguous run") {
  auto p = [](const char* s) { return normalize_phrase(s); };
  CHECK(contains_subsequence(p("big blue ocean"), p("blue ocean")));
  CHECK_FALSE(contains_subsequence(p("big blue ocean"), p("big ocean")));
  CHECK_FALSE(contains_subsequence(p("ocean"), p("the")));
}

TEST_CASE("normalization is idempotent on a generated corpus") {
  testing::Synth synth(11);
  for (int i = 0; i < 2000; ++i) {
    const std::string phrase =
        i % 2 ? synth.noun_phrase()
              : synth.predicate() + " " + synth.comma_free_phrase();
    const NormalizedPhrase once = normalize_phrase(phrase);
    CHECK(normalize_phrase(once.render()) == once);
    CHECK(normalize_phrase(phrase) == once);
  }
}

TEST_CASE("exception lemmas are fixed points of the lemmatizer") {
  std::ifstream in(KBMAP_SOURCE_DIR "/data/lemma_exceptions.tsv");
  REQUIRE(in);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  const auto table = parse_lemma_exceptions(text);
  REQUIRE(table.size() > 50);
  const Lemmatizer& lemmatizer = Lemmatizer::builtin();
  for (const auto& [surface, lemma] : table) {
    CHECK_MESSAGE(lemmatizer.lemma(lemma) == lemma, surface << " -> " << lemma);
    CHECK(lemmatizer.lemma(surface) == lemma);
  }
}

TEST_CASE("text helpers") {
  CHECK(trim("  a b \t") == "a b");
  CHECK(ascii_lower("AbC\xc3\x89") == "abc\xc3\x89");
  CHECK(split("a\tb\t", '\t').size() == 3);
  CHECK(format_double(2.5) == "2.5");
  CHECK(parse_double("3.25") == 3.25);
  CHECK_FALSE(parse_double("x").has_value());
  CHECK(fnv1a64("") == 14695981039346656037ull);
}

}  // namespace
}  // namespace kbmap
