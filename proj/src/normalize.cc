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

#include <algorithm>
#include <utility>

#include "bundled_data.h"
#include "kbmap/text.h"

namespace kbmap {

namespace {

// Upper bound on rule applications; every step either shrinks the word or
// hits the exception table, so this is never reached in practice.
constexpr int kMaxLemmaSteps = 16;

bool is_token_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || u >= 0x80;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(std::string_view word, std::string_view suffix) {
  return word.size() >= suffix.size() &&
         word.substr(word.size() - suffix.size()) == suffix;
}

int count_vowels(std::string_view word) {
  return static_cast<int>(std::count_if(word.begin(), word.end(), is_vowel));
}

bool is_alpha_word(std::string_view word) {
  return std::all_of(word.begin(), word.end(),
                     [](char c) { return c >= 'a' && c <= 'z'; });
}

// Repairs the stem left after removing -ing/-ed: undo consonant doubling
// ("swimm" -> "swim") or restore a silent e on short CVC stems ("mak" ->
// "make").
std::string repair_stem(std::string stem) {
  const std::size_t n = stem.size();
  const char last = stem[n - 1];
  if (n >= 2 && stem[n - 2] == last && !is_vowel(last) && last != 'l' &&
      last != 's' && last != 'z') {
    stem.pop_back();
    return stem;
  }
  if (n >= 3 && n <= 4 && count_vowels(stem) == 1 && !is_vowel(stem[n - 3]) &&
      is_vowel(stem[n - 2]) && !is_vowel(last) && last != 'w' && last != 'x' &&
      last != 'y') {
    stem.push_back('e');
  }
  return stem;
}

}  // namespace

std::string NormalizedPhrase::render() const { return join(tokens, " "); }

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_token_char(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                             : c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Lemmatizer::Lemmatizer(std::unordered_map<std::string, std::string> exceptions)
    : exceptions_(std::move(exceptions)) {}

const Lemmatizer& Lemmatizer::builtin() {
  static const Lemmatizer instance(
      parse_lemma_exceptions(bundled::lemma_exceptions()));
  return instance;
}

std::string Lemmatizer::step(const std::string& word) const {
  if (auto it = exceptions_.find(word); it != exceptions_.end()) {
    return it->second;
  }
  // Suffix rules only make sense for plain English words.
  if (!is_alpha_word(word)) return word;
  const std::size_t n = word.size();

  if (n > 4 && ends_with(word, "ies")) {
    return word.substr(0, n - 3) + "y";
  }
  if (n > 3 && ends_with(word, "es")) {
    const std::string_view stem = std::string_view(word).substr(0, n - 2);
    if (ends_with(stem, "sh") || ends_with(stem, "ch") ||
        ends_with(stem, "ss") || ends_with(stem, "x") || ends_with(stem, "z")) {
      return std::string(stem);
    }
  }
  if (n > 3 && ends_with(word, "s") && !ends_with(word, "ss") &&
      !ends_with(word, "us") && !ends_with(word, "is")) {
    return word.substr(0, n - 1);
  }
  if (n > 4 && ends_with(word, "ing")) {
    std::string stem = word.substr(0, n - 3);
    if (stem.size() >= 3 && count_vowels(stem) > 0) {
      return repair_stem(std::move(stem));
    }
    return word;
  }
  if (n > 3 && ends_with(word, "ed") && !ends_with(word, "eed")) {
    std::string stem = word.substr(0, n - 2);
    if (stem.size() >= 3 && count_vowels(stem) > 0) {
      return repair_stem(std::move(stem));
    }
  }
  return word;
}

std::string Lemmatizer::lemma(std::string_view token) const {
  std::string current(token);
  for (int i = 0; i < kMaxLemmaSteps; ++i) {
    std::string next = step(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

Normalizer::Normalizer(Lemmatizer lemmatizer,
                       std::unordered_set<std::string> stopwords)
    : lemmatizer_(std::move(lemmatizer)), stopwords_(std::move(stopwords)) {}

const Normalizer& Normalizer::builtin() {
  static const Normalizer instance(Lemmatizer::builtin(),
                                   parse_stopwords(bundled::stopwords()));
  return instance;
}

bool Normalizer::is_stopword(std::string_view token) const {
  return stopwords_.count(std::string(token)) > 0;
}

NormalizedPhrase Normalizer::normalize(std::string_view phrase) const {
  NormalizedPhrase out;
  for (const std::string& token : tokenize(phrase)) {
    if (is_stopword(token)) continue;
    std::string lemma = lemmatizer_.lemma(token);
    if (is_stopword(lemma)) continue;
    out.tokens.push_back(std::move(lemma));
  }
  return out;
}

std::vector<std::string> Normalizer::lemmas(std::string_view phrase) const {
  std::vector<std::string> out;
  for (const std::string& token : tokenize(phrase)) {
    out.push_back(lemmatizer_.lemma(token));
  }
  return out;
}

NormalizedPhrase normalize_phrase(std::string_view phrase) {
  return Normalizer::builtin().normalize(phrase);
}

bool contains_subsequence(const NormalizedPhrase& haystack,
                          const NormalizedPhrase& needle) {
  if (needle.tokens.empty()) return false;
  return std::search(haystack.tokens.begin(), haystack.tokens.end(),
                     needle.tokens.begin(),
                     needle.tokens.end()) != haystack.tokens.end();
}

std::unordered_map<std::string, std::string> parse_lemma_exceptions(
    std::string_view text) {
  std::unordered_map<std::string, std::string> table;
  for (std::string_view line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 2) continue;
    table.emplace(ascii_lower(trim(fields[0])), ascii_lower(trim(fields[1])));
  }
  return table;
}

std::unordered_set<std::string> parse_stopwords(std::string_view text) {
  std::unordered_set<std::string> words;
  for (std::string_view line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    words.insert(ascii_lower(line));
  }
  return words;
}

}  // namespace kbmap
