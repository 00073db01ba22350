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

#include "kbmap/alignment.h"
#include "kbmap/closed_index.h"
#include "kbmap/normalize.h"
#include "kbmap/triple.h"

namespace kbmap {

// Aligns each open triple (s, p, o) with every closed triple whose normalized
// (subject, object) equals one of
//
//   standard             (s, o)
//   reverse              (o, s)
//   pred_in_obj          (s, p + " " + o)
//   reverse_pred_in_obj  (p + " " + o, s)
//
// Comparison is on exact normalized token sequences. A side that normalizes
// to nothing never matches. Output follows open-KB order, then the pattern
// order above, then closed-KB order; a repeated (open, closed) pair keeps its
// first occurrence. `index` must have been built with `normalizer`.
AlignmentSet align_rule_based(
    const OpenKB& open_kb, const ClosedIndex& index,
    const Normalizer& normalizer = Normalizer::builtin());

}  // namespace kbmap
