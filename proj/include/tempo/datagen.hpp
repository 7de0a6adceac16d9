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

// Seeded synthetic symbolic data: persistent Markov background series,
// blocks of series driven by a shared latent stream with flip noise, and
// planted event chains (optionally straddling window boundaries) recorded in
// a ground-truth manifest.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tempo/transform.hpp"

namespace tempo {

struct CorrelatedBlock {
  std::vector<std::size_t> series;
  /// Per-sample probability that a member deviates from the latent symbol.
  double flip_rate = 0.0;
};

/// One event of a planted chain: `symbol` (index > 0 into the series
/// alphabet) holds on `series` for `length` samples starting `offset` samples
/// after the chain start.
struct PlantedEvent {
  std::size_t series = 0;
  std::uint32_t symbol = 1;
  std::size_t offset = 0;
  std::size_t length = 1;
};

struct PlantedChain {
  std::vector<PlantedEvent> events;
  /// Fraction of windows receiving an occurrence (rounded up).
  double rate = 0.0;
  /// Exact number of occurrences; overrides `rate` when non-zero.
  std::size_t count = 0;
  /// Place occurrences across window boundaries instead of inside windows.
  bool straddle = false;

  std::size_t extent() const;
};

struct GenSpec {
  std::uint64_t seed = 1;
  std::size_t series = 4;
  std::size_t timestamps = 100;
  std::size_t alphabet_size = 2;
  /// Optional per-series alphabet sizes (overrides alphabet_size).
  std::vector<std::size_t> alphabet_sizes;
  /// Probability that a background or latent stream keeps its symbol.
  double persistence = 0.9;
  /// Window length in samples used for placing plants.
  std::size_t window_samples = 10;
  Tick origin = 0;
  Duration period = 1;
  std::vector<CorrelatedBlock> blocks;
  std::vector<PlantedChain> plants;

  std::size_t alphabet_of(std::size_t s) const;
  /// Throws ConfigError for inconsistent or infeasible specifications.
  void validate() const;
};

struct PlantOccurrence {
  std::size_t plant = 0;
  std::size_t start_sample = 0;
  /// Window holding the occurrence, or the window after the crossed boundary.
  std::size_t window = 0;
  bool straddles = false;
  /// True when the boundary lies between the end of the earliest-ending
  /// planted event and the start of the latest-starting one, so no single
  /// non-overlapping window can hold the whole chain.
  bool split_guaranteed = false;
};

struct GenManifest {
  std::uint64_t seed = 0;
  std::size_t windows = 0;
  std::vector<PlantOccurrence> occurrences;
  /// Series index lists of the correlated blocks and the planted series.
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> planted_series;
};

struct GeneratedData {
  SymbolicDatabase db;
  GenManifest manifest;
};

GeneratedData generate(const GenSpec& spec);

/// Series identifiers used by the generator ("x000", "x001", ...).
std::string series_name(std::size_t index);

}  // namespace tempo
