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

#include "kbmap/taxonomy.h"

#include <algorithm>
#include <istream>

#include "kbmap/kb_io.h"
#include "kbmap/text.h"

namespace kbmap {

TsvTaxonomy::TsvTaxonomy(std::map<std::string, std::vector<std::string>> table,
                         const Normalizer& normalizer)
    : normalizer_(&normalizer) {
  for (auto& [term, hypernyms] : table) {
    const std::string key = normalizer.normalize(term).render();
    if (key.empty()) continue;
    auto& slot = table_[key];
    slot.insert(slot.end(), hypernyms.begin(), hypernyms.end());
  }
  for (auto& [key, hypernyms] : table_) {
    std::sort(hypernyms.begin(), hypernyms.end());
    hypernyms.erase(std::unique(hypernyms.begin(), hypernyms.end()),
                    hypernyms.end());
  }
}

std::vector<std::string> TsvTaxonomy::hypernyms(std::string_view term) const {
  const NormalizedPhrase phrase = normalizer_->normalize(term);
  if (phrase.empty()) return {};
  if (auto it = table_.find(phrase.render()); it != table_.end()) {
    return it->second;
  }
  if (phrase.tokens.size() > 1) {
    if (auto it = table_.find(phrase.tokens.back()); it != table_.end()) {
      return it->second;
    }
  }
  return {};
}

TsvTaxonomy parse_taxonomy(std::istream& in) {
  std::map<std::string, std::vector<std::string>> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 2 || trim(fields[0]).empty() ||
        trim(fields[1]).empty()) {
      throw ParseError(line_no, "expected term<TAB>hypernym_id");
    }
    table[std::string(trim(fields[0]))].emplace_back(trim(fields[1]));
  }
  return TsvTaxonomy(std::move(table));
}

TsvTaxonomy load_taxonomy(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_taxonomy(in);
}

}  // namespace kbmap
