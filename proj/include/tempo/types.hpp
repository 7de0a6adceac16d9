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

// Core domain model shared by every stage of the mining pipeline: time
// intervals, interned event types, event instances, temporal sequences and
// patterns, and the mining configuration.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tempo {

/// Time point expressed as an integer number of ticks at the dataset's base
/// resolution (seconds, frames, days, ...).
using Tick = std::int64_t;
/// Non-negative tick delta.
using Duration = std::int64_t;

inline constexpr Duration kUnboundedDuration = std::numeric_limits<Duration>::max() / 4;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::size_t row = 0)
      : std::runtime_error(row ? what + " (row " + std::to_string(row) + ")" : what),
        row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Half-open time interval [start, end) with start < end.
class Interval {
 public:
  Interval(Tick start, Tick end);

  Tick start() const noexcept { return start_; }
  Tick end() const noexcept { return end_; }
  Duration length() const noexcept { return end_ - start_; }

  /// True when the two intervals share a positive-length stretch of time.
  bool intersects(const Interval& other) const noexcept {
    return start_ < other.end_ && other.start_ < end_;
  }

  auto operator<=>(const Interval&) const = default;

 private:
  Tick start_;
  Tick end_;
};

using EventId = std::uint32_t;

struct EventType {
  std::string series;
  std::string symbol;

  auto operator<=>(const EventType&) const = default;
};

/// Interns (series, symbol) pairs into dense event ids. Ids are handed out in
/// insertion order, which callers keep deterministic.
class EventCatalog {
 public:
  EventId intern(std::string_view series, std::string_view symbol);
  std::optional<EventId> find(std::string_view series, std::string_view symbol) const;
  /// Like find() but throws std::out_of_range for unknown events.
  EventId at(std::string_view series, std::string_view symbol) const;

  const EventType& type(EventId id) const;
  std::string label(EventId id) const;
  std::size_t size() const noexcept { return types_.size(); }

  /// Dense index of the event's series, in order of first appearance.
  std::size_t series_index(EventId id) const;
  const std::vector<std::string>& series() const noexcept { return series_; }

 private:
  std::vector<EventType> types_;
  std::vector<std::size_t> series_of_;
  std::vector<std::string> series_;
  std::map<EventType, EventId, std::less<>> index_;
};

struct EventInstance {
  EventId event;
  Interval interval;

  bool operator==(const EventInstance&) const = default;
};

/// Sequence order: start ascending, then LATER end first (so a container
/// precedes what it contains), then event id.
bool chronological_less(const EventInstance& a, const EventInstance& b) noexcept;

struct TemporalSequence {
  std::size_t id = 0;
  std::vector<EventInstance> instances;

  TemporalSequence() = default;
  TemporalSequence(std::size_t sequence_id, std::vector<EventInstance> items);

  std::size_t size() const noexcept { return instances.size(); }
};

struct SequenceDatabase {
  EventCatalog catalog;
  std::vector<TemporalSequence> sequences;
  Duration window = 0;
  Duration overlap = 0;

  std::size_t size() const noexcept { return sequences.size(); }
  bool empty() const noexcept { return sequences.empty(); }
};

enum class RelationKind : std::uint8_t { Follows = 0, Contains = 1, Overlaps = 2 };

inline constexpr RelationKind kRelations[] = {RelationKind::Follows, RelationKind::Contains,
                                              RelationKind::Overlaps};

std::string_view to_string(RelationKind kind) noexcept;
RelationKind parse_relation(std::string_view text);

struct RelationTriple {
  RelationKind relation;
  std::uint16_t left_slot;
  std::uint16_t right_slot;

  auto operator<=>(const RelationTriple&) const = default;
};

/// k chronologically ordered event slots plus a relation for every slot pair.
///
/// Relations are stored in extension order: all pairs (i, j) with i < j,
/// grouped by the later slot j, so the pattern of k + 1 events is the pattern
/// of k events followed by the k relations of the new last slot.
class TemporalPattern {
 public:
  TemporalPattern() = default;
  TemporalPattern(std::vector<EventId> events, std::vector<RelationKind> relations);
  /// Builds a pattern from an explicit triple list; every slot pair must be
  /// covered exactly once.
  static TemporalPattern from_triples(std::vector<EventId> events,
                                      std::span<const RelationTriple> triples);

  std::size_t size() const noexcept { return events_.size(); }
  const std::vector<EventId>& events() const noexcept { return events_; }
  const std::vector<RelationKind>& relations() const noexcept { return relations_; }

  RelationKind relation(std::size_t left, std::size_t right) const;
  std::vector<RelationTriple> triples() const;

  /// Pattern with `event` appended as the last slot; `with_previous[i]` is the
  /// relation between slot i and the new slot.
  TemporalPattern extended(EventId event, std::span<const RelationKind> with_previous) const;
  /// Pattern restricted to the given ascending slots.
  TemporalPattern sub_pattern(std::span<const std::size_t> slots) const;
  /// Sorted event multiset of the pattern.
  std::vector<EventId> group() const;

  /// Canonical, catalog-independent serialization; equal patterns have equal keys.
  std::string key() const;
  std::string describe(const EventCatalog& catalog) const;

  auto operator<=>(const TemporalPattern&) const = default;

  static constexpr std::size_t relation_index(std::size_t left, std::size_t right) noexcept {
    return right * (right - 1) / 2 + left;
  }

 private:
  std::vector<EventId> events_;
  std::vector<RelationKind> relations_;
};

struct PatternHash {
  std::size_t operator()(const TemporalPattern& pattern) const noexcept;
};

enum class Mode { Frequent, Rare };
enum class Pruning { None, Apriori, Transitivity, All };

std::string_view to_string(Mode mode) noexcept;
std::string_view to_string(Pruning pruning) noexcept;
Mode parse_mode(std::string_view text);
Pruning parse_pruning(std::string_view text);

inline bool uses_apriori(Pruning p) noexcept {
  return p == Pruning::Apriori || p == Pruning::All;
}
inline bool uses_transitivity(Pruning p) noexcept {
  return p == Pruning::Transitivity || p == Pruning::All;
}

struct MiningConfig {
  double sigma_min = 0.0;
  /// Upper relative support; nullopt means unbounded.
  std::optional<double> sigma_max;
  double delta = 0.0;
  Duration epsilon = 0;
  Duration min_overlap = 1;
  Duration t_max = kUnboundedDuration;
  Mode mode = Mode::Frequent;
  Pruning pruning = Pruning::All;
  std::size_t max_pattern_len = 5;

  /// Throws ConfigError on any violated invariant.
  void validate() const;
  /// Frequent mode ignores sigma_max.
  std::optional<double> effective_sigma_max() const {
    return mode == Mode::Rare ? sigma_max : std::nullopt;
  }
};

/// Relative thresholds converted to sequence counts for one database size.
struct CountThresholds {
  std::size_t min_count = 1;
  std::optional<std::size_t> max_count;
  double delta = 0.0;

  static CountThresholds from(const MiningConfig& config, std::size_t sequences);

  bool frequent(std::size_t support) const noexcept { return support >= min_count; }
  bool within_max(std::size_t support) const noexcept {
    return !max_count || support <= *max_count;
  }
  /// All-confidence check: support / max constituent support >= delta.
  bool confident(std::size_t support, std::size_t max_event_support) const noexcept;
};

}  // namespace tempo
