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

// Exact level-wise temporal pattern mining over the hierarchical lookup
// hashes, with independently switchable group (Apriori) and transitivity
// pruning, and the approximate variant that first screens series pairs by
// normalized mutual information.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tempo/bounds.hpp"
#include "tempo/hlh.hpp"
#include "tempo/transform.hpp"
#include "tempo/types.hpp"

namespace tempo {

struct PatternResult {
  TemporalPattern pattern;
  std::size_t support = 0;
  double relative_support = 0.0;
  double confidence = 0.0;
  SequenceIds sequences;
  std::vector<Witness> witnesses;
};

struct EventResult {
  EventId event = 0;
  std::size_t support = 0;
  double relative_support = 0.0;
};

/// Work done at one level. Arithmetic invariants:
///   groups_generated   = groups_pruned_apriori + groups_evaluated
///   patterns_generated = patterns_pruned_transitivity + patterns_verified   (k >= 3)
///   patterns_verified  = patterns_accepted + patterns_rejected
struct LevelCounters {
  std::size_t k = 0;
  std::uint64_t groups_generated = 0;
  std::uint64_t groups_pruned_apriori = 0;
  std::uint64_t groups_evaluated = 0;
  std::uint64_t patterns_generated = 0;
  std::uint64_t patterns_pruned_transitivity = 0;
  std::uint64_t patterns_verified = 0;
  std::uint64_t patterns_accepted = 0;
  std::uint64_t patterns_rejected = 0;
  std::uint64_t relation_checks = 0;

  LevelCounters& operator+=(const LevelCounters& other);
};

/// Outcome of screening one series pair in approximate mining.
struct SeriesPairDecision {
  std::size_t x = 0;
  std::size_t y = 0;
  double nmi_xy = 0.0;
  double nmi_yx = 0.0;
  MuThresholds thresholds;
  bool kept = true;
  std::string reason;
};

struct ApproximationLog {
  std::vector<std::string> series;
  std::vector<bool> series_kept;
  std::vector<SeriesPairDecision> pairs;
  std::size_t window_samples = 1;
  double mi_seconds = 0.0;

  double pruned_series_fraction() const;
  double pruned_pair_fraction() const;
  bool pair_kept(std::size_t x, std::size_t y) const;

 private:
  friend ApproximationLog screen_series(const SymbolicDatabase&, std::size_t,
                                        const MiningConfig&);
  std::vector<std::vector<bool>> kept_matrix_;
};

/// Screens every series pair: NMI in both directions against the
/// thresholds derived from the bounds. A series survives when it belongs to
/// at least one surviving pair (or is the only series).
ApproximationLog screen_series(const SymbolicDatabase& db, std::size_t window_samples,
                               const MiningConfig& config);

struct MiningReport {
  MiningConfig config;
  std::size_t sequence_count = 0;
  std::vector<EventResult> single_events;
  /// Sorted by (length, canonical key).
  std::vector<PatternResult> patterns;
  std::vector<LevelCounters> levels;
  LevelCounters totals;
  /// Level-2 groups scanned plus level-k (k >= 3) patterns verified.
  std::uint64_t candidates_verified = 0;
  std::size_t peak_live_patterns = 0;
  double mining_seconds = 0.0;
  std::optional<ApproximationLog> approximation;

  std::set<std::string> pattern_keys() const;
  std::size_t count_of_length(std::size_t k) const;
};

struct MinerOptions {
  /// Worker threads for candidate evaluation; results are merged in a fixed
  /// order, so output does not depend on this value.
  std::size_t threads = 1;
  /// Run the HLH structural audit after every level.
  bool audit = false;
};

/// Restricts mining to event pairs whose series survived screening.
class SeriesFilter {
 public:
  SeriesFilter(const EventCatalog& catalog, const ApproximationLog& log);
  bool event_allowed(EventId e) const { return event_ok_[e]; }
  bool pair_allowed(EventId a, EventId b) const;

 private:
  std::vector<bool> event_ok_;
  std::vector<std::size_t> series_of_;  // catalog event -> log series index
  const ApproximationLog* log_;
};

HlhK mine_pairs(const Hlh1& h1, const SequenceDatabase& db, const MiningConfig& config,
                LevelCounters& counters, const MinerOptions& options = {},
                const SeriesFilter* filter = nullptr);

HlhK mine_k(const HlhK& previous, const Hlh1& h1, const HlhK& h2, const SequenceDatabase& db,
            const MiningConfig& config, std::size_t k, LevelCounters& counters,
            const MinerOptions& options = {}, const SeriesFilter* filter = nullptr);

MiningReport mine(const SequenceDatabase& db, const MiningConfig& config,
                  const MinerOptions& options = {});

/// Screens series pairs on `symbolic` and mines `db` (built from it)
/// restricted to the surviving series and series pairs.
MiningReport mine_approximate(const SymbolicDatabase& symbolic, const SequenceDatabase& db,
                              const MiningConfig& config, const MinerOptions& options = {});

/// |approx ∩ exact| / |exact| over pattern keys; 1 when exact is empty.
double accuracy(const MiningReport& approximate, const MiningReport& exact);

}  // namespace tempo
