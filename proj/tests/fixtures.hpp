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

// Shared test data: the running example (hand-encoded sequence database and
// symbolic table), the CO2/boiler sequence, and seeded random instances.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "tempo/io.hpp"
#include "tempo/transform.hpp"
#include "tempo/types.hpp"

namespace tempo::fixtures {

inline Tick hm(int h, int m) { return static_cast<Tick>(h) * 3600 + static_cast<Tick>(m) * 60; }

using Row = std::tuple<const char*, const char*, Tick, Tick>;  // series, symbol, start, end

inline SequenceDatabase make_db(const std::vector<std::vector<Row>>& rows,
                                const std::vector<std::pair<const char*, std::vector<const char*>>>&
                                    alphabet) {
  SequenceDatabase db;
  for (const auto& [series, symbols] : alphabet) {
    for (auto sym : symbols) db.catalog.intern(series, sym);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<EventInstance> inst;
    for (const auto& [series, symbol, s, e] : rows[i]) {
      inst.push_back({db.catalog.intern(series, symbol), Interval(s, e)});
    }
    db.sequences.emplace_back(i, std::move(inst));
  }
  return db;
}

/// The four sequences of the running example exactly as printed.
inline SequenceDatabase table3() {
  const std::vector<std::vector<Row>> rows = {
      {{"S", "On", hm(10, 0), hm(10, 15)},
       {"T", "Off", hm(10, 0), hm(10, 35)},
       {"W", "On", hm(10, 0), hm(10, 40)},
       {"I", "Off", hm(10, 0), hm(10, 30)},
       {"S", "Off", hm(10, 15), hm(10, 35)},
       {"I", "On", hm(10, 30), hm(10, 40)},
       {"S", "On", hm(10, 35), hm(10, 40)},
       {"T", "On", hm(10, 35), hm(10, 40)}},
      {{"S", "Off", hm(10, 45), hm(11, 15)},
       {"T", "Off", hm(10, 45), hm(10, 55)},
       {"W", "Off", hm(10, 45), hm(11, 5)},
       {"I", "Off", hm(10, 45), hm(11, 0)},
       {"T", "On", hm(10, 55), hm(11, 0)},
       {"T", "Off", hm(11, 0), hm(11, 15)},
       {"I", "On", hm(11, 0), hm(11, 5)},
       {"W", "On", hm(11, 5), hm(11, 25)},
       {"I", "Off", hm(11, 5), hm(11, 20)},
       {"S", "On", hm(11, 15), hm(11, 25)},
       {"T", "On", hm(11, 15), hm(11, 25)},
       {"I", "On", hm(11, 20), hm(11, 25)}},
      {{"S", "Off", hm(11, 30), hm(12, 10)},
       {"T", "Off", hm(11, 30), hm(12, 10)},
       {"W", "Off", hm(11, 30), hm(12, 10)},
       {"I", "Off", hm(11, 30), hm(12, 10)}},
      {{"S", "On", hm(12, 15), hm(12, 55)},
       {"T", "On", hm(12, 15), hm(12, 55)},
       {"W", "On", hm(12, 15), hm(12, 55)},
       {"I", "On", hm(12, 15), hm(12, 20)},
       {"I", "Off", hm(12, 20), hm(12, 50)},
       {"I", "On", hm(12, 50), hm(12, 55)}},
  };
  auto db = make_db(rows, {{"S", {"Off", "On"}}, {"T", {"Off", "On"}}, {"W", {"Off", "On"}},
                           {"I", {"Off", "On"}}});
  db.window = hm(0, 45);
  return db;
}

/// Symbolic table of the running example, loaded from the bundled CSV.
inline SymbolicDatabase table1() {
  return to_symbolic(read_wide_csv_file(std::string(TEMPO_DATA_DIR) + "/table1.csv"), {});
}

/// HighCO2 [6:00,10:00], BoilerOn [7:00,8:00], LowCO2 [13:00,15:00].
inline SequenceDatabase fig1() {
  return make_db({{{"CO2", "High", hm(6, 0), hm(10, 0)},
                   {"Boiler", "On", hm(7, 0), hm(8, 0)},
                   {"CO2", "Low", hm(13, 0), hm(15, 0)}}},
                 {{"CO2", {"High", "Low"}}, {"Boiler", {"On"}}});
}

struct RandomInstance {
  SymbolicDatabase symbolic;
  SequenceDatabase db;
  MiningConfig config;
};

/// Small seeded instance: <= 4 series of 2-3 symbols (<= 12 events),
/// <= 30 sequences, patterns up to length 3.
inline RandomInstance random_instance(std::uint64_t seed, Mode mode, Duration epsilon) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  RandomInstance r;
  const int n_series = pick(2, 4);
  const int window_samples = pick(3, 6);
  const int tmax_samples = window_samples - pick(0, 1);
  const int overlap_samples = pick(0, 1) ? pick(0, tmax_samples - 1) : 0;
  const int n_seq = pick(4, 30);
  const Duration period = 3;
  const double persistence = 0.4 + 0.5 * unit();
  const int step = window_samples - overlap_samples;
  r.symbolic.grid = {0, period, static_cast<std::size_t>((n_seq - 1) * step + window_samples)};
  for (int s = 0; s < n_series; ++s) {
    const int k = pick(2, 3);
    SymbolicSeries xs;
    xs.id = "v" + std::to_string(s);
    for (int a = 0; a < k; ++a) xs.alphabet.push_back("a" + std::to_string(a));
    std::uint32_t cur = static_cast<std::uint32_t>(pick(0, k - 1));
    for (std::size_t i = 0; i < r.symbolic.grid.length; ++i) {
      if (i > 0 && unit() >= persistence) cur = static_cast<std::uint32_t>(pick(0, k - 1));
      xs.codes.push_back(cur);
    }
    r.symbolic.series.push_back(std::move(xs));
  }
  const Duration window = window_samples * period;
  const Duration overlap = overlap_samples * period;
  MiningConfig& c = r.config;
  c.epsilon = epsilon;
  c.min_overlap = epsilon + pick(1, 3);
  c.t_max = tmax_samples * period;
  c.mode = mode;
  c.sigma_min = 0.05 + 0.4 * unit();
  c.delta = 0.6 * unit();
  if (mode == Mode::Rare) c.sigma_max = c.sigma_min + (1.0 - c.sigma_min) * unit();
  c.max_pattern_len = 3;
  r.db = build_sequence_db(r.symbolic, window, overlap, c.t_max);
  return r;
}

}  // namespace tempo::fixtures
