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

// Support and confidence of events, event groups and patterns over a
// sequence database.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tempo/relation.hpp"
#include "tempo/types.hpp"

namespace tempo {

struct SupportStats {
  std::size_t count = 0;
  double relative = 0.0;
};

/// Sequences containing at least one instance of `event`.
SupportStats supp_event(const SequenceDatabase& db, EventId event);
/// Sequences containing every event of the group; an event listed m times
/// must have at least m instances in the sequence.
SupportStats supp_group(const SequenceDatabase& db, std::span<const EventId> events);
/// Sequences with a consistent witness for the pattern.
SupportStats supp_pattern(const SequenceDatabase& db, const TemporalPattern& pattern,
                          const MiningConfig& config);

/// supp(group {a, b}) / max(supp(a), supp(b)).
double conf_pair(const SequenceDatabase& db, EventId a, EventId b);
/// supp(pattern) / max constituent event support (all-confidence).
double conf_pattern(const SequenceDatabase& db, const TemporalPattern& pattern,
                    const MiningConfig& config);

}  // namespace tempo
