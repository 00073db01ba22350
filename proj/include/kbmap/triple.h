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

// Core data model: open (free-form) triples, closed (schema-constrained)
// triples, the relation schema and the two knowledge base containers.

#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kbmap {

// Raised when an input violates a data-model invariant.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the file loaders; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A free-form (subject, predicate, object) statement with the confidence the
// open KB assigned to it.
struct OpenTriple {
  std::string subject;
  std::string predicate;
  std::string object;
  double score = 1.0;

  friend bool operator==(const OpenTriple&, const OpenTriple&) = default;
  friend auto operator<=>(const OpenTriple&, const OpenTriple&) = default;
};

// A statement whose relation comes from a RelationSchema.
struct ClosedTriple {
  std::string subject;
  std::string relation;
  std::string object;

  friend bool operator==(const ClosedTriple&, const ClosedTriple&) = default;
  friend auto operator<=>(const ClosedTriple&, const ClosedTriple&) = default;
};

// Throws InvalidInput unless every phrase is nonempty after trimming and the
// score is a finite nonnegative number.
void validate(const OpenTriple& triple);

class RelationSchema {
 public:
  RelationSchema() = default;

  // `invertible` flags relations the manual-mapping baseline may apply with
  // swapped arguments. Throws InvalidInput on empty or repeated names, or on
  // a flag naming an unknown relation.
  explicit RelationSchema(std::vector<std::string> relations,
                          std::set<std::string> invertible = {});

  bool contains(std::string_view relation) const;
  bool invertible(std::string_view relation) const;
  bool has_inverse_markers() const { return !invertible_.empty(); }

  const std::vector<std::string>& relations() const { return relations_; }
  std::size_t size() const { return relations_.size(); }

 private:
  std::vector<std::string> relations_;
  std::set<std::string, std::less<>> lookup_;
  std::set<std::string, std::less<>> invertible_;
};

struct OpenKB {
  std::string name;
  std::vector<OpenTriple> triples;
};

// Holds no two triples that agree on (normalized subject, relation,
// normalized object); use make_closed_kb or load_closed_kb to build one.
struct ClosedKB {
  std::string name;
  std::vector<ClosedTriple> triples;
};

// Renders "s, p, o" verbatim. This is the text handed to embedders and
// generators.
std::string serialize_triple(const OpenTriple& triple);
std::string serialize_triple(const ClosedTriple& triple);

}  // namespace kbmap
