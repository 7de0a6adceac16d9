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

// The epsilon-buffered Follows / Contains / Overlaps classifier and the
// consistent-witness test deciding whether a sequence supports a pattern.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tempo/types.hpp"

namespace tempo {

/// Relation between two instances where `earlier` precedes `later` in
/// sequence order. Predicates are tried in the order Contains, Overlaps,
/// Follows so at most one relation is ever returned.
std::optional<RelationKind> classify_relation(const Interval& earlier, const Interval& later,
                                              Duration epsilon, Duration min_overlap) noexcept;

inline std::optional<RelationKind> classify_relation(const EventInstance& earlier,
                                                     const EventInstance& later, Duration epsilon,
                                                     Duration min_overlap) noexcept {
  return classify_relation(earlier.interval, later.interval, epsilon, min_overlap);
}

/// Instance indices into a sequence, one per pattern slot, strictly increasing.
using Witness = std::vector<std::uint32_t>;

/// Searches for a single consistent assignment of instances to the pattern's
/// slots: instances appear in sequence order, every pairwise relation holds,
/// and the assignment spans at most t_max (latest end minus first start).
///
/// `relation_checks`, when given, is incremented once per classify call.
std::optional<Witness> find_witness(const TemporalSequence& sequence, const TemporalPattern& pattern,
                                    const MiningConfig& config,
                                    std::uint64_t* relation_checks = nullptr);

/// Same search with the candidate instance indices of every slot supplied by
/// the caller (each list ascending); used by the miner with its index tables.
std::optional<Witness> find_witness(const TemporalSequence& sequence, const TemporalPattern& pattern,
                                    std::span<const std::span<const std::uint32_t>> candidates,
                                    const MiningConfig& config,
                                    std::uint64_t* relation_checks = nullptr);

inline bool sequence_supports(const TemporalSequence& sequence, const TemporalPattern& pattern,
                              const MiningConfig& config) {
  return find_witness(sequence, pattern, config).has_value();
}

/// Replays a witness through the classifier; true iff every triple holds and
/// the span constraint is met.
bool witness_valid(const TemporalSequence& sequence, const TemporalPattern& pattern,
                   const Witness& witness, const MiningConfig& config);

}  // namespace tempo
