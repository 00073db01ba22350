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

// Phrase normalization: lowercase, tokenize, lemmatize, drop stopwords.
//
// The lemmatizer is rule based: an irregular-form exception table followed by
// ordered suffix rules (-ies, -es, -s, -ing, -ed with doubling undo). It is
// applied until a fixed point so that lemma(lemma(w)) == lemma(w) always
// holds, which makes normalization idempotent. Both the exception table and
// the stopword list are bundled data files compiled into the library.

#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kbmap {

struct NormalizedPhrase {
  std::vector<std::string> tokens;

  // Tokens joined by a single space; an empty phrase renders as "".
  std::string render() const;
  bool empty() const { return tokens.empty(); }

  friend bool operator==(const NormalizedPhrase&,
                         const NormalizedPhrase&) = default;
};

// Lowercases and splits on anything that is not an ASCII letter or digit.
// Bytes >= 0x80 are kept inside tokens so UTF-8 words survive intact.
std::vector<std::string> tokenize(std::string_view text);

class Lemmatizer {
 public:
  explicit Lemmatizer(std::unordered_map<std::string, std::string> exceptions);

  // The table shipped in data/lemma_exceptions.tsv.
  static const Lemmatizer& builtin();

  // `token` must already be lowercase.
  std::string lemma(std::string_view token) const;

 private:
  std::string step(const std::string& token) const;

  std::unordered_map<std::string, std::string> exceptions_;
};

class Normalizer {
 public:
  Normalizer(Lemmatizer lemmatizer, std::unordered_set<std::string> stopwords);

  // Built-in lemmatizer plus data/stopwords.txt.
  static const Normalizer& builtin();

  NormalizedPhrase normalize(std::string_view phrase) const;

  // Lemmas in order with stopwords kept; used for predicate token counts.
  std::vector<std::string> lemmas(std::string_view phrase) const;

  bool is_stopword(std::string_view token) const;
  const Lemmatizer& lemmatizer() const { return lemmatizer_; }

 private:
  Lemmatizer lemmatizer_;
  std::unordered_set<std::string> stopwords_;
};

NormalizedPhrase normalize_phrase(std::string_view phrase);

// True when `needle` is a nonempty contiguous run of tokens in `haystack`.
bool contains_subsequence(const NormalizedPhrase& haystack,
                          const NormalizedPhrase& needle);

// Loaders for the bundled data formats, exposed for tests and custom tables.
std::unordered_map<std::string, std::string> parse_lemma_exceptions(
    std::string_view text);
std::unordered_set<std::string> parse_stopwords(std::string_view text);

}  // namespace kbmap
