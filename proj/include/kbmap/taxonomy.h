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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kbmap/normalize.h"

namespace kbmap {

// Hypernym lookup, e.g. "ocean" -> {"body_of_water.n.01", ...}.
class Taxonomy {
 public:
  virtual ~Taxonomy() = default;
  // Sorted, without duplicates.
  virtual std::vector<std::string> hypernyms(std::string_view term) const = 0;
};

// Loaded from TSV rows term<TAB>hypernym_id, already transitively closed.
// Terms are keyed by their normalized rendering. A phrase with no entry of
// its own falls back to its last normalized token (the head noun of most
// English noun phrases).
class TsvTaxonomy : public Taxonomy {
 public:
  explicit TsvTaxonomy(std::map<std::string, std::vector<std::string>> table,
                       const Normalizer& normalizer = Normalizer::builtin());

  std::vector<std::string> hypernyms(std::string_view term) const override;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> table_;
  const Normalizer* normalizer_;
};

TsvTaxonomy parse_taxonomy(std::istream& in);
TsvTaxonomy load_taxonomy(const std::filesystem::path& path);

// Taxonomy that knows nothing; ISA atoms never fire.
class EmptyTaxonomy : public Taxonomy {
 public:
  std::vector<std::string> hypernyms(std::string_view) const override {
    return {};
  }
};

}  // namespace kbmap
