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

#include "tempo/measures.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tempo {

namespace {

void require_db(const SequenceDatabase& db) {
  if (db.empty()) throw std::invalid_argument("support needs a non-empty sequence database");
}

void require_event(const SequenceDatabase& db, EventId event) {
  if (event >= db.catalog.size()) {
    throw std::out_of_range("unknown event id " + std::to_string(event));
  }
}

SupportStats make_stats(std::size_t count, std::size_t n) {
  return {count, static_cast<double>(count) / static_cast<double>(n)};
}

std::size_t max_event_support(const SequenceDatabase& db, std::span<const EventId> events) {
  std::size_t best = 0;
  for (auto e : events) best = std::max(best, supp_event(db, e).count);
  if (best == 0) throw std::domain_error("confidence undefined: no constituent event occurs");
  return best;
}

}  // namespace

SupportStats supp_event(const SequenceDatabase& db, EventId event) {
  require_db(db);
  require_event(db, event);
  std::size_t count = 0;
  for (const auto& seq : db.sequences) {
    count += std::any_of(seq.instances.begin(), seq.instances.end(),
                         [event](const EventInstance& i) { return i.event == event; });
  }
  return make_stats(count, db.size());
}

SupportStats supp_group(const SequenceDatabase& db, std::span<const EventId> events) {
  require_db(db);
  if (events.empty()) throw std::invalid_argument("event group must not be empty");
  std::map<EventId, std::size_t> need;
  for (auto e : events) {
    require_event(db, e);
    ++need[e];
  }
  std::size_t count = 0;
  for (const auto& seq : db.sequences) {
    std::map<EventId, std::size_t> have;
    for (const auto& inst : seq.instances) ++have[inst.event];
    count += std::all_of(need.begin(), need.end(),
                         [&have](const auto& kv) { return have[kv.first] >= kv.second; });
  }
  return make_stats(count, db.size());
}

SupportStats supp_pattern(const SequenceDatabase& db, const TemporalPattern& pattern,
                          const MiningConfig& config) {
  require_db(db);
  if (pattern.size() < 2) throw std::invalid_argument("pattern must have at least two events");
  for (auto e : pattern.events()) require_event(db, e);
  std::size_t count = 0;
  for (const auto& seq : db.sequences) count += sequence_supports(seq, pattern, config);
  return make_stats(count, db.size());
}

double conf_pair(const SequenceDatabase& db, EventId a, EventId b) {
  const EventId group[] = {a, b};
  const auto denom = max_event_support(db, group);
  return static_cast<double>(supp_group(db, group).count) / static_cast<double>(denom);
}

double conf_pattern(const SequenceDatabase& db, const TemporalPattern& pattern,
                    const MiningConfig& config) {
  const auto denom = max_event_support(db, pattern.events());
  return static_cast<double>(supp_pattern(db, pattern, config).count) /
         static_cast<double>(denom);
}

}  // namespace tempo
