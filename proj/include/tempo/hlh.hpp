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

// Hierarchical lookup hash structures. Level 1 maps each frequent event to
// the ascending list of sequences containing it and, per sequence, to its
// instance positions. Level k maps each k-event group to its supporting
// sequences and patterns, each pattern to its supporting sequences, and each
// (pattern, sequence) to one witness.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "tempo/relation.hpp"
#include "tempo/types.hpp"

namespace tempo {

/// Ascending positions into SequenceDatabase::sequences.
using SequenceIds = std::vector<std::uint32_t>;
/// Sorted event multiset.
using GroupKey = std::vector<EventId>;

struct EventPostings {
  SequenceIds sequences;
  /// Aligned with `sequences`: ascending instance positions in that sequence.
  std::vector<std::vector<std::uint32_t>> instances;
};

class Hlh1 {
 public:
  void insert(EventId event, EventPostings postings);

  bool contains(EventId event) const { return eh_.count(event) != 0; }
  const EventPostings* find(EventId event) const;
  std::size_t support(EventId event) const;
  /// Instance positions of `event` in sequence `seq`; empty when absent.
  std::span<const std::uint32_t> instances(EventId event, std::uint32_t seq) const;
  const std::map<EventId, EventPostings>& events() const noexcept { return eh_; }
  std::size_t size() const noexcept { return eh_.size(); }

 private:
  std::map<EventId, EventPostings> eh_;
};

/// Indexes every event whose support reaches `min_count`. The optional
/// filter restricts indexing to accepted events.
Hlh1 build_hlh1(const SequenceDatabase& db, std::size_t min_count,
                const std::vector<bool>* allowed_events = nullptr);
Hlh1 build_hlh1(const SequenceDatabase& db, double sigma_min);

struct Intersection {
  SequenceIds ids;
  bool missing = false;
};

/// Sequences containing every listed event (duplicates ignored).
Intersection intersect_sequences(const Hlh1& h, std::span<const EventId> events);
/// Sequences containing the multiset: an event listed m times needs m instances.
Intersection group_sequences(const Hlh1& h, std::span<const EventId> group);
/// Ascending-list intersection.
SequenceIds intersect(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

struct GroupEntry {
  SequenceIds sequences;
  std::vector<TemporalPattern> patterns;
};

class HlhK {
 public:
  explicit HlhK(std::size_t k = 2) : k_(k) {}

  std::size_t k() const noexcept { return k_; }

  void add_group(const GroupKey& group, SequenceIds sequences);
  /// Stores a pattern that passed the support and confidence checks. The
  /// group must exist. Re-inserting an identical payload is a no-op; a
  /// different payload for a stored pattern throws std::logic_error.
  void insert_pattern(const GroupKey& group, const TemporalPattern& pattern, SequenceIds sequences,
                      std::vector<Witness> witnesses);

  const GroupEntry* group(const GroupKey& key) const;
  const SequenceIds* pattern_sequences(const TemporalPattern& pattern) const;
  const Witness* witness(const TemporalPattern& pattern, std::uint32_t seq) const;
  const std::vector<Witness>* witnesses(const TemporalPattern& pattern) const;

  const std::map<GroupKey, GroupEntry>& groups() const noexcept { return eh_; }
  std::size_t pattern_count() const noexcept { return ph_.size(); }
  bool empty() const noexcept { return ph_.empty(); }
  /// Distinct events over all stored patterns, ascending.
  std::vector<EventId> distinct_events() const;
  /// Removes groups that ended up without patterns.
  void drop_empty_groups();

  /// Checks the structural invariants and that every stored pattern meets
  /// the thresholds; throws std::logic_error describing the first violation.
  void audit(const Hlh1& h1, const CountThresholds& thresholds) const;

 private:
  std::size_t k_;
  std::map<GroupKey, GroupEntry> eh_;
  std::unordered_map<TemporalPattern, SequenceIds, PatternHash> ph_;
  std::unordered_map<TemporalPattern, std::vector<Witness>, PatternHash> sh_;
};

Intersection intersect_sequences(const HlhK& h, const GroupKey& group);

}  // namespace tempo
