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

#include "kbmap/triple.h"

#include <cmath>
#include <utility>

#include "kbmap/text.h"

namespace kbmap {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

void validate(const OpenTriple& triple) {
  if (trim(triple.subject).empty() || trim(triple.predicate).empty() ||
      trim(triple.object).empty()) {
    throw InvalidInput("open triple has an empty field");
  }
  if (!std::isfinite(triple.score) || triple.score < 0) {
    throw InvalidInput("open triple score must be finite and nonnegative");
  }
}

RelationSchema::RelationSchema(std::vector<std::string> relations,
                               std::set<std::string> invertible)
    : relations_(std::move(relations)) {
  for (const std::string& name : relations_) {
    if (trim(name).empty()) throw InvalidInput("empty relation name");
    if (!lookup_.insert(name).second) {
      throw InvalidInput("duplicate relation name: " + name);
    }
  }
  for (const std::string& name : invertible) {
    if (!lookup_.count(name)) {
      throw InvalidInput("inverse marker on unknown relation: " + name);
    }
    invertible_.insert(name);
  }
}

bool RelationSchema::contains(std::string_view relation) const {
  return lookup_.find(relation) != lookup_.end();
}

bool RelationSchema::invertible(std::string_view relation) const {
  return invertible_.find(relation) != invertible_.end();
}

std::string serialize_triple(const OpenTriple& triple) {
  return triple.subject + ", " + triple.predicate + ", " + triple.object;
}

std::string serialize_triple(const ClosedTriple& triple) {
  return triple.subject + ", " + triple.relation + ", " + triple.object;
}

}  // namespace kbmap
