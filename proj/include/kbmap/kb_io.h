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

// TSV readers and writers for knowledge bases and relation schemas.
//
//   open KB:    subject<TAB>predicate<TAB>object[<TAB>score]
//   closed KB:  subject<TAB>relation<TAB>object
//   schema:     one relation per line, "!Name" marks an invertible relation
//
// No header line. Blank lines are skipped; a trailing CR is tolerated.

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "kbmap/normalize.h"
#include "kbmap/triple.h"

namespace kbmap {

OpenKB parse_open_kb(std::istream& in, std::string name = "");
OpenKB load_open_kb(const std::filesystem::path& path);

// Writes fields joined by single tabs with the score always present.
void write_open_kb(const OpenKB& kb, std::ostream& out);
void save_open_kb(const OpenKB& kb, const std::filesystem::path& path);

struct ClosedKBLoad {
  ClosedKB kb;
  std::size_t unknown_relation = 0;  // rejected: relation not in schema
  std::size_t duplicates = 0;        // collapsed onto an earlier triple
  std::size_t degenerate = 0;        // rejected: subject equals object
};

// Applies the ClosedKB invariants to `triples`, keeping first occurrences.
ClosedKBLoad make_closed_kb(std::string name, std::vector<ClosedTriple> triples,
                            const RelationSchema& schema,
                            const Normalizer& normalizer = Normalizer::builtin());

ClosedKBLoad parse_closed_kb(std::istream& in, const RelationSchema& schema,
                             std::string name = "");
ClosedKBLoad load_closed_kb(const std::filesystem::path& path,
                            const RelationSchema& schema);

void write_closed_kb(const ClosedKB& kb, std::ostream& out);
void save_closed_kb(const ClosedKB& kb, const std::filesystem::path& path);

RelationSchema parse_schema(std::istream& in);
RelationSchema load_schema(const std::filesystem::path& path);

// The ConceptNet relation list bundled in data/conceptnet_relations.txt.
RelationSchema conceptnet_schema();

// Helpers shared by the other loaders. Throw InvalidInput on I/O failure.
std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace kbmap
