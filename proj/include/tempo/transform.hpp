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

// Data transformation: raw numeric series -> symbolic series -> temporal
// events -> a sequence database cut into (possibly overlapping) windows.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tempo/types.hpp"

namespace tempo {

/// Regular sampling grid shared by every series of a dataset.
struct TimeGrid {
  Tick origin = 0;
  Duration period = 1;
  std::size_t length = 0;

  Tick at(std::size_t i) const noexcept { return origin + static_cast<Tick>(i) * period; }
  /// One period past the last sample: the end of the covered time range.
  Tick end() const noexcept { return at(length); }
};

/// Derives the grid of strictly increasing, regularly spaced timestamps;
/// throws IngestError (with the 1-based offending position) otherwise.
TimeGrid grid_from_timestamps(std::span<const Tick> timestamps);

struct RawSeries {
  std::string id;
  std::vector<Tick> timestamps;
  std::vector<double> values;
};

/// Ordered symbols of one variable plus the mapping rule. With explicit
/// thresholds, symbol i covers [thresholds[i-1], thresholds[i]); with
/// quantile mode the thresholds are taken from the data's empirical quantiles.
struct AlphabetSpec {
  std::vector<std::string> symbols;
  std::vector<double> thresholds;
  bool quantile = false;

  static AlphabetSpec with_thresholds(std::vector<std::string> symbols,
                                      std::vector<double> thresholds);
  static AlphabetSpec with_quantiles(std::vector<std::string> symbols);

  void validate() const;
};

struct SymbolicSeries {
  std::string id;
  std::vector<std::string> alphabet;
  /// Index into `alphabet` per sample.
  std::vector<std::uint32_t> codes;

  std::size_t size() const noexcept { return codes.size(); }
  const std::string& symbol_at(std::size_t i) const { return alphabet[codes[i]]; }
};

/// Series built from already-symbolic text; the alphabet is the sorted set
/// of distinct values.
SymbolicSeries symbolic_from_strings(std::string id, std::span<const std::string> values);

struct SymbolicDatabase {
  TimeGrid grid;
  std::vector<SymbolicSeries> series;

  /// Throws std::invalid_argument when series lengths differ from the grid
  /// or a code falls outside its alphabet.
  void validate() const;
  std::size_t index_of(std::string_view id) const;
};

SymbolicSeries symbolize(const RawSeries& raw, const AlphabetSpec& spec);

/// All intervals during which one symbol of one series holds.
struct TemporalEvent {
  std::string series;
  std::string symbol;
  std::vector<Interval> instances;
};

/// Maximal runs of equal symbols become [run start, last sample + period];
/// events are returned in alphabet order and only for symbols that occur.
std::vector<TemporalEvent> extract_events(const SymbolicSeries& series, const TimeGrid& grid);

/// Cuts the event timeline into windows of length `window` advancing by
/// `window - overlap`, starting at the grid origin, until the data end is
/// covered. Instances are clipped to their window.
SequenceDatabase build_sequence_db(const SymbolicDatabase& db, Duration window, Duration overlap,
                                   Duration t_max);

}  // namespace tempo
