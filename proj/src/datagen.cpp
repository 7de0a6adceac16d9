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

#include "tempo/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

namespace tempo {

namespace {

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }
  /// Uniform symbol different from `current`.
  std::uint32_t other(std::uint32_t current, std::size_t k) {
    auto v = static_cast<std::uint32_t>(below(k - 1));
    return v >= current ? v + 1 : v;
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::uint32_t> markov_stream(Rng& rng, std::size_t length, std::size_t k,
                                         double persistence) {
  std::vector<std::uint32_t> out(length);
  if (length == 0) return out;
  out[0] = static_cast<std::uint32_t>(rng.below(k));
  for (std::size_t i = 1; i < length; ++i) {
    out[i] = (k > 1 && rng.uniform() >= persistence) ? rng.other(out[i - 1], k) : out[i - 1];
  }
  return out;
}

}  // namespace

std::string series_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "x%03zu", index);
  return buf;
}

std::size_t PlantedChain::extent() const {
  std::size_t e = 0;
  for (const auto& ev : events) e = std::max(e, ev.offset + ev.length);
  return e;
}

std::size_t GenSpec::alphabet_of(std::size_t s) const {
  return alphabet_sizes.empty() ? alphabet_size : alphabet_sizes.at(s);
}

void GenSpec::validate() const {
  if (series == 0) throw ConfigError("at least one series required");
  if (timestamps == 0) throw ConfigError("at least one timestamp required");
  if (!alphabet_sizes.empty() && alphabet_sizes.size() != series) {
    throw ConfigError("alphabet_sizes must list one size per series");
  }
  for (std::size_t s = 0; s < series; ++s) {
    if (alphabet_of(s) < 1) throw ConfigError("alphabets need at least one symbol");
  }
  if (!(persistence >= 0.0 && persistence <= 1.0)) throw ConfigError("persistence must lie in [0, 1]");
  if (window_samples == 0) throw ConfigError("window_samples must be positive");
  if (period <= 0) throw ConfigError("period must be positive");

  std::set<std::size_t> used;
  for (const auto& b : blocks) {
    if (!(b.flip_rate >= 0.0 && b.flip_rate <= 1.0)) throw ConfigError("flip_rate must lie in [0, 1]");
    if (b.series.empty()) throw ConfigError("correlated block without series");
    for (auto s : b.series) {
      if (s >= series) throw ConfigError("block series index out of range");
      if (!used.insert(s).second) throw ConfigError("series assigned to more than one block");
      if (alphabet_of(s) != alphabet_of(b.series.front())) {
        throw ConfigError("block members must share one alphabet size");
      }
    }
  }
  std::set<std::size_t> planted;
  for (const auto& p : plants) {
    if (p.events.empty()) throw ConfigError("planted chain without events");
    if (!(p.rate >= 0.0 && p.rate <= 1.0)) throw ConfigError("plant rate must lie in [0, 1]");
    if (p.extent() > window_samples) {
      throw ConfigError("planted chain spans " + std::to_string(p.extent()) +
                        " samples, longer than the window of " + std::to_string(window_samples));
    }
    std::set<std::size_t> mine;
    for (const auto& e : p.events) {
      if (e.series >= series) throw ConfigError("plant series index out of range");
      if (used.count(e.series)) throw ConfigError("planted series may not belong to a block");
      if (e.length == 0) throw ConfigError("planted events need positive length");
      if (e.symbol == 0 || e.symbol >= alphabet_of(e.series)) {
        throw ConfigError("planted symbols must be non-baseline symbols of their alphabet");
      }
      mine.insert(e.series);
    }
    for (auto s : mine) {
      if (!planted.insert(s).second) throw ConfigError("series used by more than one plant");
    }
    // Events of one chain on the same series must leave a gap, or they merge.
    for (std::size_t i = 0; i < p.events.size(); ++i) {
      for (std::size_t j = i + 1; j < p.events.size(); ++j) {
        const auto& a = p.events[i];
        const auto& b = p.events[j];
        if (a.series != b.series) continue;
        if (a.offset <= b.offset + b.length && b.offset <= a.offset + a.length) {
          throw ConfigError("planted events on one series must be separated by a gap");
        }
      }
    }
  }
}

GeneratedData generate(const GenSpec& spec) {
  spec.validate();
  GeneratedData out;
  auto& db = out.db;
  db.grid = {spec.origin, spec.period, spec.timestamps};
  const std::size_t windows = (spec.timestamps + spec.window_samples - 1) / spec.window_samples;
  out.manifest.seed = spec.seed;
  out.manifest.windows = windows;

  std::vector<int> role(spec.series, -1);  // -1 background, -2 planted, >= 0 block
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    for (auto s : spec.blocks[b].series) role[s] = static_cast<int>(b);
    out.manifest.blocks.push_back(spec.blocks[b].series);
  }
  std::set<std::size_t> planted;
  for (const auto& p : spec.plants) {
    for (const auto& e : p.events) planted.insert(e.series);
  }
  for (auto s : planted) role[s] = -2;
  out.manifest.planted_series.assign(planted.begin(), planted.end());

  std::vector<std::vector<std::uint32_t>> latent(spec.blocks.size());
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    Rng rng(spec.seed, 1'000'000 + b);
    latent[b] = markov_stream(rng, spec.timestamps, spec.alphabet_of(spec.blocks[b].series.front()),
                              spec.persistence);
  }

  for (std::size_t s = 0; s < spec.series; ++s) {
    const std::size_t k = spec.alphabet_of(s);
    SymbolicSeries xs;
    xs.id = series_name(s);
    for (std::size_t a = 0; a < k; ++a) xs.alphabet.push_back("s" + std::to_string(a));
    Rng rng(spec.seed, s);
    if (role[s] == -2) {
      xs.codes.assign(spec.timestamps, 0);
    } else if (role[s] >= 0) {
      const auto& lat = latent[static_cast<std::size_t>(role[s])];
      const double flip = spec.blocks[static_cast<std::size_t>(role[s])].flip_rate;
      xs.codes = lat;
      if (k > 1) {
        for (auto& c : xs.codes) {
          if (rng.uniform() < flip) c = rng.other(c, k);
        }
      }
    } else {
      xs.codes = markov_stream(rng, spec.timestamps, k, spec.persistence);
    }
    db.series.push_back(std::move(xs));
  }

  for (std::size_t pi = 0; pi < spec.plants.size(); ++pi) {
    const auto& plant = spec.plants[pi];
    Rng rng(spec.seed, 2'000'000 + pi);
    const std::size_t extent = plant.extent();
    std::size_t first_end = extent, last_start = 0;
    for (const auto& e : plant.events) {
      first_end = std::min(first_end, e.offset + e.length);
      last_start = std::max(last_start, e.offset);
    }
    // Candidate slots: windows (inside) or boundaries b >= 1 (straddling).
    std::vector<std::size_t> slots;
    for (std::size_t w = plant.straddle ? 1 : 0; w < windows; ++w) {
      const std::size_t base = w * spec.window_samples;
      if (plant.straddle) {
        if (base >= extent - 1 && base + extent <= spec.timestamps + 1) slots.push_back(w);
      } else if (base + spec.window_samples <= spec.timestamps) {
        slots.push_back(w);
      }
    }
    std::size_t wanted = plant.count;
    if (wanted == 0) {
      wanted = static_cast<std::size_t>(std::ceil(plant.rate * static_cast<double>(windows) - 1e-9));
    }
    // Straddling occurrences occupy two windows; keep them two boundaries apart.
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> pool = slots;
    while (chosen.size() < wanted && !pool.empty()) {
      const std::size_t pick = rng.below(pool.size());
      const std::size_t w = pool[pick];
      chosen.push_back(w);
      std::erase_if(pool, [&](std::size_t v) {
        return v == w || (plant.straddle && (v + 1 == w || w + 1 == v));
      });
    }
    if (chosen.size() < wanted) {
      throw ConfigError("cannot place " + std::to_string(wanted) + " occurrences of plant " +
                        std::to_string(pi));
    }
    std::sort(chosen.begin(), chosen.end());
    for (auto w : chosen) {
      PlantOccurrence occ;
      occ.plant = pi;
      occ.window = w;
      occ.straddles = plant.straddle;
      const std::size_t base = w * spec.window_samples;
      if (plant.straddle) {
        // Chain start c with c < base < c + extent; prefer a split point
        // between the earliest end and the latest start.
        std::size_t lo, hi;
        if (first_end <= last_start) {
          lo = base - last_start;
          hi = base - first_end;
          occ.split_guaranteed = true;
        } else {
          lo = base - (extent - 1);
          hi = base - 1;
        }
        occ.start_sample = lo + rng.below(hi - lo + 1);
      } else {
        // Leave the window's first sample at baseline so neighbouring
        // occurrences on the same series never touch.
        const std::size_t lo = extent < spec.window_samples ? base + 1 : base;
        const std::size_t hi = base + spec.window_samples - extent;
        occ.start_sample = lo + rng.below(hi - lo + 1);
      }
      for (const auto& e : plant.events) {
        auto& codes = db.series[e.series].codes;
        for (std::size_t i = 0; i < e.length; ++i) {
          const std::size_t at = occ.start_sample + e.offset + i;
          if (at < codes.size()) codes[at] = e.symbol;
        }
      }
      out.manifest.occurrences.push_back(occ);
    }
  }
  return out;
}

}  // namespace tempo
