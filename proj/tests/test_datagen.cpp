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

#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "tempo/datagen.hpp"
#include "tempo/information.hpp"
#include "tempo/miner.hpp"

using namespace tempo;

namespace {

GenSpec planted_spec(bool straddle, std::size_t count) {
  GenSpec spec;
  spec.seed = 5;
  spec.series = 5;
  spec.timestamps = 400;
  spec.window_samples = 20;
  spec.alphabet_size = 2;
  PlantedChain chain;
  chain.events = {{0, 1, 0, 4}, {1, 1, 1, 2}, {2, 1, 5, 2}};
  chain.count = count;
  chain.straddle = straddle;
  spec.plants = {chain};
  return spec;
}

TemporalPattern planted_pattern(const EventCatalog& cat) {
  return TemporalPattern({cat.at("x000", "s1"), cat.at("x001", "s1"), cat.at("x002", "s1")},
                         {RelationKind::Contains, RelationKind::Follows, RelationKind::Follows});
}

}  // namespace

TEST_CASE("same seed, same data; different seed, different data") {
  GenSpec spec;
  spec.series = 6;
  spec.timestamps = 300;
  spec.alphabet_size = 3;
  spec.blocks = {{{1, 2}, 0.05}};
  auto a = generate(spec), b = generate(spec);
  for (std::size_t s = 0; s < spec.series; ++s) CHECK(a.db.series[s].codes == b.db.series[s].codes);
  spec.seed = 2;
  auto c = generate(spec);
  bool differs = false;
  for (std::size_t s = 0; s < spec.series; ++s) differs |= a.db.series[s].codes != c.db.series[s].codes;
  CHECK(differs);
  CHECK(a.db.series[0].id == "x000");
  CHECK(a.db.series[0].alphabet == std::vector<std::string>{"s0", "s1", "s2"});
}

TEST_CASE("dimensions follow the spec") {
  GenSpec spec;
  spec.series = 200;
  spec.window_samples = 4;
  spec.timestamps = 1460 * 4;
  auto d = generate(spec);
  CHECK(d.db.series.size() == 200);
  CHECK(d.db.grid.length == 5840);
  CHECK(d.manifest.windows == 1460);
  auto db = build_sequence_db(d.db, 4, 0, 4);
  CHECK(db.size() == 1460);
}

TEST_CASE("infeasible specs are rejected") {
  auto spec = planted_spec(false, 1);
  spec.plants[0].events.push_back({3, 1, 30, 2});  // longer than a window
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec = planted_spec(false, 1000);
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec = planted_spec(false, 1);
  spec.plants[0].events[0].symbol = 0;
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec = planted_spec(false, 1);
  spec.blocks = {{{0, 4}, 0.1}};
  CHECK_THROWS_AS(generate(spec), ConfigError);
  GenSpec bad;
  bad.persistence = 1.5;
  CHECK_THROWS_AS(generate(bad), ConfigError);
}

TEST_CASE("a block without noise is perfectly dependent") {
  GenSpec spec;
  spec.series = 3;
  spec.timestamps = 500;
  spec.alphabet_size = 3;
  spec.blocks = {{{0, 1, 2}, 0.0}};
  auto d = generate(spec);
  CHECK(d.db.series[0].codes == d.db.series[1].codes);
  CHECK(nmi(pair_table(d.db, 0, 2, 1).joint()) == doctest::Approx(1.0));
}

TEST_CASE("independent series drift towards zero dependence") {
  auto mean_nmi = [](std::size_t length) {
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      GenSpec spec;
      spec.seed = seed;
      spec.series = 2;
      spec.timestamps = length;
      spec.alphabet_size = 3;
      spec.persistence = 0.0;
      sum += nmi(pair_table(generate(spec).db, 0, 1, 1).joint());
    }
    return sum / 10;
  };
  const double small = mean_nmi(100), large = mean_nmi(10000);
  CHECK(large < small);
  CHECK(large < 0.002);
}

TEST_CASE("noise-free plants are fully recovered from the manifest") {
  auto spec = planted_spec(false, 12);
  auto d = generate(spec);
  REQUIRE(d.manifest.occurrences.size() == 12);
  std::set<std::size_t> windows;
  for (const auto& o : d.manifest.occurrences) {
    CHECK_FALSE(o.straddles);
    CHECK(o.start_sample >= o.window * 20);
    CHECK(o.start_sample + 7 <= (o.window + 1) * 20);
    windows.insert(o.window);
  }
  CHECK(windows.size() == 12);
  auto db = build_sequence_db(d.db, 20, 0, 20);
  MiningConfig c;
  c.sigma_min = 0.5;  // the plant occurs in 12 of 20 windows
  c.delta = 0.5;
  c.t_max = 20;
  c.max_pattern_len = 3;
  auto r = mine(db, c);
  const auto p = planted_pattern(db.catalog);
  auto it = std::find_if(r.patterns.begin(), r.patterns.end(),
                         [&](const auto& x) { return x.pattern == p; });
  REQUIRE(it != r.patterns.end());
  std::set<std::size_t> found(it->sequences.begin(), it->sequences.end());
  CHECK(found == windows);
}

TEST_CASE("straddling plants are split across a boundary") {
  auto spec = planted_spec(true, 6);
  auto d = generate(spec);
  REQUIRE(d.manifest.occurrences.size() == 6);
  for (const auto& o : d.manifest.occurrences) {
    CHECK(o.straddles);
    CHECK(o.split_guaranteed);
    const std::size_t boundary = o.window * 20;
    CHECK(o.start_sample < boundary);
    CHECK(o.start_sample + 7 > boundary);
  }
}
