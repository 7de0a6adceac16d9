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

#include "tempo/transform.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tempo {

TimeGrid grid_from_timestamps(std::span<const Tick> timestamps) {
  if (timestamps.empty()) throw IngestError("no samples");
  TimeGrid grid;
  grid.origin = timestamps.front();
  grid.length = timestamps.size();
  if (timestamps.size() == 1) return grid;
  grid.period = timestamps[1] - timestamps[0];
  if (grid.period <= 0) throw IngestError("timestamps must be strictly increasing", 2);
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    const Duration step = timestamps[i] - timestamps[i - 1];
    if (step <= 0) throw IngestError("timestamps must be strictly increasing", i + 1);
    if (step != grid.period) {
      throw IngestError("irregular sampling: gap of " + std::to_string(step) + " ticks, expected " +
                            std::to_string(grid.period),
                        i + 1);
    }
  }
  return grid;
}

AlphabetSpec AlphabetSpec::with_thresholds(std::vector<std::string> symbols,
                                           std::vector<double> thresholds) {
  AlphabetSpec spec{std::move(symbols), std::move(thresholds), false};
  spec.validate();
  return spec;
}

AlphabetSpec AlphabetSpec::with_quantiles(std::vector<std::string> symbols) {
  AlphabetSpec spec{std::move(symbols), {}, true};
  spec.validate();
  return spec;
}

void AlphabetSpec::validate() const {
  if (symbols.empty()) throw ConfigError("alphabet must not be empty");
  std::set<std::string> unique(symbols.begin(), symbols.end());
  if (unique.size() != symbols.size()) throw ConfigError("alphabet symbols must be unique");
  if (quantile) {
    if (!thresholds.empty()) throw ConfigError("quantile alphabets take no thresholds");
    return;
  }
  if (thresholds.size() + 1 != symbols.size()) {
    throw ConfigError("an alphabet of n symbols needs n-1 thresholds");
  }
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!std::isfinite(thresholds[i])) throw ConfigError("thresholds must be finite");
    if (i > 0 && thresholds[i] <= thresholds[i - 1]) {
      throw ConfigError("thresholds must be strictly ascending");
    }
  }
}

SymbolicSeries symbolic_from_strings(std::string id, std::span<const std::string> values) {
  if (values.empty()) throw IngestError("series '" + id + "' is empty");
  std::set<std::string> distinct(values.begin(), values.end());
  SymbolicSeries out{std::move(id), {distinct.begin(), distinct.end()}, {}};
  out.codes.reserve(values.size());
  for (const auto& v : values) {
    auto it = std::lower_bound(out.alphabet.begin(), out.alphabet.end(), v);
    out.codes.push_back(static_cast<std::uint32_t>(it - out.alphabet.begin()));
  }
  return out;
}

void SymbolicDatabase::validate() const {
  for (const auto& s : series) {
    if (s.codes.size() != grid.length) {
      throw std::invalid_argument("series '" + s.id + "' has " + std::to_string(s.codes.size()) +
                                  " samples, grid has " + std::to_string(grid.length));
    }
    if (s.alphabet.empty()) throw std::invalid_argument("series '" + s.id + "' has no alphabet");
    for (auto c : s.codes) {
      if (c >= s.alphabet.size()) {
        throw std::invalid_argument("series '" + s.id + "' has a symbol outside its alphabet");
      }
    }
  }
}

std::size_t SymbolicDatabase::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].id == id) return i;
  }
  throw std::out_of_range("unknown series '" + std::string(id) + "'");
}

SymbolicSeries symbolize(const RawSeries& raw, const AlphabetSpec& spec) {
  spec.validate();
  if (raw.values.empty()) throw IngestError("series '" + raw.id + "' is empty");
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    if (!std::isfinite(raw.values[i])) {
      throw IngestError("series '" + raw.id + "' has a non-finite value", i + 1);
    }
  }
  std::vector<double> cuts = spec.thresholds;
  if (spec.quantile) {
    std::vector<double> sorted = raw.values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t k = spec.symbols.size();
    for (std::size_t i = 1; i < k; ++i) cuts.push_back(sorted[i * sorted.size() / k]);
  }
  SymbolicSeries out{raw.id, spec.symbols, {}};
  out.codes.reserve(raw.values.size());
  for (double v : raw.values) {
    auto bin = std::upper_bound(cuts.begin(), cuts.end(), v) - cuts.begin();
    out.codes.push_back(static_cast<std::uint32_t>(bin));
  }
  return out;
}

std::vector<TemporalEvent> extract_events(const SymbolicSeries& series, const TimeGrid& grid) {
  if (series.codes.empty()) throw std::invalid_argument("series '" + series.id + "' is empty");
  if (series.codes.size() != grid.length) {
    throw std::invalid_argument("series '" + series.id + "' does not match the time grid");
  }
  std::vector<std::vector<Interval>> runs(series.alphabet.size());
  std::size_t start = 0;
  for (std::size_t i = 1; i <= series.codes.size(); ++i) {
    if (i == series.codes.size() || series.codes[i] != series.codes[start]) {
      runs[series.codes[start]].emplace_back(grid.at(start), grid.at(i - 1) + grid.period);
      start = i;
    }
  }
  std::vector<TemporalEvent> out;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    if (!runs[s].empty()) out.push_back({series.id, series.alphabet[s], std::move(runs[s])});
  }
  return out;
}

namespace {

// Floor division for possibly negative numerators.
Tick floor_div(Tick a, Tick b) {
  Tick q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SequenceDatabase build_sequence_db(const SymbolicDatabase& db, Duration window, Duration overlap,
                                   Duration t_max) {
  db.validate();
  if (window < db.grid.period) {
    throw ConfigError("window (" + std::to_string(window) + ") is shorter than one sample period (" +
                      std::to_string(db.grid.period) + ")");
  }
  if (overlap < 0 || overlap > t_max || t_max > window) {
    throw ConfigError("splitting requires 0 <= t_ov <= t_max <= window");
  }
  if (overlap >= window) throw ConfigError("t_ov must be smaller than the window");

  SequenceDatabase out;
  out.window = window;
  out.overlap = overlap;
  if (db.grid.length == 0) return out;

  const Duration step = window - overlap;
  const Tick origin = db.grid.origin;
  const Tick data_end = db.grid.end();
  std::size_t windows = 1;
  while (origin + static_cast<Tick>(windows - 1) * step + window < data_end) ++windows;

  std::vector<std::vector<EventInstance>> buckets(windows);
  for (const auto& series : db.series) {
    for (const auto& symbol : series.alphabet) out.catalog.intern(series.id, symbol);
    for (auto& event : extract_events(series, db.grid)) {
      const EventId id = out.catalog.at(event.series, event.symbol);
      for (const auto& iv : event.instances) {
        // Windows k with origin + k*step < iv.end and origin + k*step + window > iv.start.
        Tick lo = floor_div(iv.start() - window - origin, step) + 1;
        Tick hi = floor_div(iv.end() - origin - 1, step);
        lo = std::max<Tick>(lo, 0);
        hi = std::min<Tick>(hi, static_cast<Tick>(windows) - 1);
        for (Tick k = lo; k <= hi; ++k) {
          const Tick ws = origin + k * step;
          const Tick s = std::max(iv.start(), ws);
          const Tick e = std::min(iv.end(), ws + window);
          if (s < e) buckets[static_cast<std::size_t>(k)].push_back({id, Interval(s, e)});
        }
      }
    }
  }
  out.sequences.reserve(windows);
  for (std::size_t k = 0; k < windows; ++k) out.sequences.emplace_back(k, std::move(buckets[k]));
  return out;
}

}  // namespace tempo
