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

#include "kbmap/alignment.h"

#include <istream>
#include <ostream>
#include <utility>

#include "json.hpp"

#include "json_codec.h"
#include "kbmap/kb_io.h"
#include "kbmap/text.h"

namespace kbmap {

using nlohmann::json;

std::string_view to_string(AlignMethod method) {
  switch (method) {
    case AlignMethod::kRule:
      return "rule";
    case AlignMethod::kEmbed:
      return "embed";
    case AlignMethod::kEmbedInverse:
      return "embed-inv";
  }
  return "rule";
}

std::string_view to_string(AlignPattern pattern) {
  switch (pattern) {
    case AlignPattern::kStandard:
      return "standard";
    case AlignPattern::kReverse:
      return "reverse";
    case AlignPattern::kPredInObject:
      return "pred_in_obj";
    case AlignPattern::kReversePredInObject:
      return "reverse_pred_in_obj";
  }
  return "standard";
}

AlignMethod parse_align_method(std::string_view text) {
  if (text == "rule") return AlignMethod::kRule;
  if (text == "embed") return AlignMethod::kEmbed;
  if (text == "embed-inv") return AlignMethod::kEmbedInverse;
  throw InvalidInput("unknown alignment method '" + std::string(text) + "'");
}

AlignPattern parse_align_pattern(std::string_view text) {
  if (text == "standard") return AlignPattern::kStandard;
  if (text == "reverse") return AlignPattern::kReverse;
  if (text == "pred_in_obj") return AlignPattern::kPredInObject;
  if (text == "reverse_pred_in_obj") return AlignPattern::kReversePredInObject;
  throw InvalidInput("unknown alignment pattern '" + std::string(text) + "'");
}

Alignment Alignment::rule(OpenTriple open, ClosedTriple closed,
                          AlignPattern pattern) {
  Alignment a;
  a.open = std::move(open);
  a.closed = std::move(closed);
  a.method = AlignMethod::kRule;
  a.pattern = pattern;
  return a;
}

Alignment Alignment::embed(OpenTriple open, ClosedTriple closed,
                           double distance, bool inverse) {
  Alignment a;
  a.open = std::move(open);
  a.closed = std::move(closed);
  a.method = inverse ? AlignMethod::kEmbedInverse : AlignMethod::kEmbed;
  a.distance = distance;
  return a;
}

std::string alignment_to_json(const Alignment& a) {
  json j;
  j["open"] = open_to_json(a.open);
  j["closed"] = closed_to_json(a.closed);
  j["method"] = to_string(a.method);
  if (a.pattern) j["pattern"] = to_string(*a.pattern);
  if (a.distance) j["distance"] = *a.distance;
  return j.dump();
}

Alignment alignment_from_json(std::string_view line) {
  const json j = json::parse(line);
  Alignment a;
  a.open = open_from_json(j.at("open"));
  a.closed = closed_from_json(j.at("closed"));
  a.method = parse_align_method(j.at("method").get<std::string>());
  const bool is_rule = a.method == AlignMethod::kRule;
  if (is_rule) {
    if (!j.contains("pattern") || j.contains("distance")) {
      throw InvalidInput("rule alignment needs a pattern and no distance");
    }
    a.pattern = parse_align_pattern(j.at("pattern").get<std::string>());
  } else {
    if (!j.contains("distance") || j.contains("pattern")) {
      throw InvalidInput("embedding alignment needs a distance and no pattern");
    }
    a.distance = j.at("distance").get<double>();
    if (*a.distance < 0) throw InvalidInput("negative alignment distance");
  }
  return a;
}

void write_alignments(const AlignmentSet& set, std::ostream& out) {
  for (const Alignment& a : set.alignments) out << alignment_to_json(a) << '\n';
}

void save_alignments(const AlignmentSet& set,
                     const std::filesystem::path& path) {
  auto out = open_output(path);
  write_alignments(set, out);
}

AlignmentSet read_alignments(std::istream& in) {
  AlignmentSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      set.alignments.push_back(alignment_from_json(line));
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return set;
}

AlignmentSet load_alignments(const std::filesystem::path& path) {
  auto in = open_input(path);
  AlignmentSet set = read_alignments(in);
  set.provenance = path.string();
  return set;
}

}  // namespace kbmap
