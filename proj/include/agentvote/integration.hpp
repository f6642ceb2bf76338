// Copyright 2026 The agentvote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Integration operators applied to a gathered vote multiset.

#pragma once

#include <optional>
#include <span>

#include "agentvote/core_model.hpp"

namespace agentvote {

struct VoteSet {
  std::span<const Value> values;
  // The integrating agent's current state. Absent for a supervisor, which
  // has no state of its own.
  std::optional<Value> own;
};

// A most frequent value. Ties go to `own` when it is among the tied modes,
// otherwise to the smallest tied mode.
Value dominant_value(const VoteSet& votes);

// Lower median: the smallest c in [0, k] minimizing sum |x - c|.
// Throws ValidationError for values outside [0, k].
Value consensus_value(const VoteSet& votes, Value k);

// Consensus with probability mixed_consensus_prob, dominant otherwise.
// Consumes exactly one draw from rng.
Value mixed_integrate(const VoteSet& votes, Value k, double mixed_consensus_prob, Rng& rng);

// Dispatches on strategy. Only kMixed touches rng.
Value integrate(Strategy strategy, const VoteSet& votes, Value k, double mixed_consensus_prob,
                Rng& rng);

}  // namespace agentvote
