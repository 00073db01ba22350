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

// Shared JSON shapes for triples: {"s","p","o","score"} and {"s","r","o"}.

#pragma once

#include "json.hpp"

#include "kbmap/triple.h"

namespace kbmap {

inline nlohmann::json open_to_json(const OpenTriple& t) {
  nlohmann::json j;
  j["s"] = t.subject;
  j["p"] = t.predicate;
  j["o"] = t.object;
  j["score"] = t.score;
  return j;
}

inline nlohmann::json closed_to_json(const ClosedTriple& t) {
  nlohmann::json j;
  j["s"] = t.subject;
  j["r"] = t.relation;
  j["o"] = t.object;
  return j;
}

inline OpenTriple open_from_json(const nlohmann::json& j) {
  OpenTriple t;
  t.subject = j.at("s").get<std::string>();
  t.predicate = j.at("p").get<std::string>();
  t.object = j.at("o").get<std::string>();
  t.score = j.contains("score") ? j.at("score").get<double>() : 1.0;
  validate(t);
  return t;
}

inline ClosedTriple closed_from_json(const nlohmann::json& j) {
  return {j.at("s").get<std::string>(), j.at("r").get<std::string>(),
          j.at("o").get<std::string>()};
}

}  // namespace kbmap
