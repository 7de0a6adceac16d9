// Copyright 2026 The Tempo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exhaustive reference miner: every ordered event list up to the maximal
// length, every relation assignment, every sequence. No indexes, no pruning.

#pragma once

#include <cstddef>
#include <vector>

#include "tempo/miner.hpp"

namespace tempo {

struct OracleLimits {
  std::size_t max_events = 12;
  std::size_t max_sequences = 50;
  std::size_t max_length = 4;
};

/// Patterns meeting sigma_min, delta and (rare mode) sigma_max, sorted by
/// (length, pattern). Throws std::invalid_argument when the instance exceeds
/// the limits.
std::vector<PatternResult> brute_force_mine(const SequenceDatabase& db, const MiningConfig& config,
                                            const OracleLimits& limits = {});

}  // namespace tempo
