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

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "bundled_data.h"
#include "kbmap/text.h"

namespace kbmap {

namespace {

// Reads the next line, stripping a trailing CR. Returns false at EOF.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::string field(std::string_view raw, std::size_t line_no,
                  const char* what) {
  std::string_view value = trim(raw);
  if (value.empty()) {
    throw ParseError(line_no, std::string("empty ") + what + " field");
  }
  return std::string(value);
}

std::string stem_of(const std::filesystem::path& path) {
  return path.stem().string();
}

}  // namespace

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path.string());
  return out;
}

OpenKB parse_open_kb(std::istream& in, std::string name) {
  OpenKB kb;
  kb.name = std::move(name);
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 3) {
      throw ParseError(line_no, "missing field (expected 3 or 4 columns, got " +
                                    std::to_string(fields.size()) + ")");
    }
    if (fields.size() > 4) {
      throw ParseError(line_no, "too many fields (expected 3 or 4 columns, got " +
                                    std::to_string(fields.size()) + ")");
    }
    OpenTriple triple;
    triple.subject = field(fields[0], line_no, "subject");
    triple.predicate = field(fields[1], line_no, "predicate");
    triple.object = field(fields[2], line_no, "object");
    if (fields.size() == 4) {
      auto score = parse_double(fields[3]);
      if (!score) {
        throw ParseError(line_no, "invalid score '" + std::string(fields[3]) + "'");
      }
      if (*score < 0) throw ParseError(line_no, "negative score");
      triple.score = *score;
    }
    kb.triples.push_back(std::move(triple));
  }
  return kb;
}

OpenKB load_open_kb(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_open_kb(in, stem_of(path));
}

void write_open_kb(const OpenKB& kb, std::ostream& out) {
  for (const OpenTriple& t : kb.triples) {
    out << t.subject << '\t' << t.predicate << '\t' << t.object << '\t'
        << format_double(t.score) << '\n';
  }
}

void save_open_kb(const OpenKB& kb, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_open_kb(kb, out);
}

ClosedKBLoad make_closed_kb(std::string name, std::vector<ClosedTriple> triples,
                            const RelationSchema& schema,
                            const Normalizer& normalizer) {
  ClosedKBLoad result;
  result.kb.name = std::move(name);
  std::unordered_set<std::string> seen;
  for (ClosedTriple& t : triples) {
    if (!schema.contains(t.relation)) {
      ++result.unknown_relation;
      continue;
    }
    const std::string s = normalizer.normalize(t.subject).render();
    const std::string o = normalizer.normalize(t.object).render();
    if (s == o) {
      ++result.degenerate;
      continue;
    }
    if (!seen.insert(s + '\t' + t.relation + '\t' + o).second) {
      ++result.duplicates;
      continue;
    }
    result.kb.triples.push_back(std::move(t));
  }
  return result;
}

ClosedKBLoad parse_closed_kb(std::istream& in, const RelationSchema& schema,
                             std::string name) {
  std::vector<ClosedTriple> triples;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 columns, got " +
                                    std::to_string(fields.size()));
    }
    triples.push_back({field(fields[0], line_no, "subject"),
                       field(fields[1], line_no, "relation"),
                       field(fields[2], line_no, "object")});
  }
  return make_closed_kb(std::move(name), std::move(triples), schema);
}

ClosedKBLoad load_closed_kb(const std::filesystem::path& path,
                            const RelationSchema& schema) {
  auto in = open_input(path);
  return parse_closed_kb(in, schema, stem_of(path));
}

void write_closed_kb(const ClosedKB& kb, std::ostream& out) {
  for (const ClosedTriple& t : kb.triples) {
    out << t.subject << '\t' << t.relation << '\t' << t.object << '\n';
  }
}

void save_closed_kb(const ClosedKB& kb, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_closed_kb(kb, out);
}

RelationSchema parse_schema(std::istream& in) {
  std::vector<std::string> names;
  std::set<std::string> invertible;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    std::string_view name = trim(line);
    if (name.empty() || name.front() == '#') continue;
    bool inverse = false;
    if (name.front() == '!') {
      inverse = true;
      name = trim(name.substr(1));
      if (name.empty()) throw ParseError(line_no, "empty relation name");
    }
    if (name.find_first_of(" \t,") != std::string_view::npos) {
      throw ParseError(line_no, "relation names may not contain spaces or commas");
    }
    names.emplace_back(name);
    if (inverse) invertible.emplace(name);
  }
  try {
    return RelationSchema(std::move(names), std::move(invertible));
  } catch (const InvalidInput& e) {
    throw ParseError(line_no, e.what());
  }
}

RelationSchema load_schema(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_schema(in);
}

RelationSchema conceptnet_schema() {
  std::istringstream in{std::string(bundled::conceptnet_relations())};
  return parse_schema(in);
}

}  // namespace kbmap
