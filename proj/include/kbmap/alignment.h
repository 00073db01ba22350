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

// Alignments pair an open triple with a closed triple believed to express the
// same fact. They are the weak-supervision training unit.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbmap/triple.h"

namespace kbmap {

enum class AlignMethod { kRule, kEmbed, kEmbedInverse };

// Which (subject, object) arrangement of the open triple matched.
enum class AlignPattern {
  kStandard,           // (s, o)
  kReverse,            // (o, s)
  kPredInObject,       // (s, p o)
  kReversePredInObject // (p o, s)
};

std::string_view to_string(AlignMethod method);
std::string_view to_string(AlignPattern pattern);
AlignMethod parse_align_method(std::string_view text);
AlignPattern parse_align_pattern(std::string_view text);

// Exactly one of `pattern` (rule method) or `distance` (embed methods) is set;
// use the factories to keep that invariant.
struct Alignment {
  OpenTriple open;
  ClosedTriple closed;
  AlignMethod method = AlignMethod::kRule;
  std::optional<AlignPattern> pattern;
  std::optional<double> distance;

  static Alignment rule(OpenTriple open, ClosedTriple closed,
                        AlignPattern pattern);
  static Alignment embed(OpenTriple open, ClosedTriple closed, double distance,
                         bool inverse);

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

struct AlignmentSet {
  std::vector<Alignment> alignments;
  std::string provenance;

  std::size_t size() const { return alignments.size(); }
  bool empty() const { return alignments.empty(); }
};

// JSONL, one object per alignment:
//   {"open":{"s","p","o","score"},"closed":{"s","r","o"},"method",
//    "pattern"|"distance"}
std::string alignment_to_json(const Alignment& alignment);
Alignment alignment_from_json(std::string_view line);

void write_alignments(const AlignmentSet& set, std::ostream& out);
void save_alignments(const AlignmentSet& set,
                     const std::filesystem::path& path);
AlignmentSet read_alignments(std::istream& in);
AlignmentSet load_alignments(const std::filesystem::path& path);

}  // namespace kbmap
