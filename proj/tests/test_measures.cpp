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
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "tempo/measures.hpp"

using namespace tempo;
using fixtures::hm;

namespace {

// Direct row scan: number of sequences containing every listed event at least once.
std::size_t rows_with(const SequenceDatabase& db, std::initializer_list<EventId> events) {
  std::size_t n = 0;
  for (const auto& seq : db.sequences) {
    n += std::all_of(events.begin(), events.end(), [&](EventId e) {
      return std::any_of(seq.instances.begin(), seq.instances.end(),
                         [e](const EventInstance& i) { return i.event == e; });
    });
  }
  return n;
}

}  // namespace

TEST_CASE("event supports on the running example") {
  auto db = fixtures::table3();
  const auto& cat = db.catalog;
  auto woff = supp_event(db, cat.at("W", "Off"));
  CHECK(woff.count == 2);
  CHECK(woff.relative == doctest::Approx(0.5));
  std::vector<std::string> at_least_07, all_rows;
  for (EventId e = 0; e < cat.size(); ++e) {
    auto s = supp_event(db, e);
    CHECK(s.count == rows_with(db, {e}));
    if (s.relative >= 0.7) at_least_07.push_back(cat.label(e));
    if (s.relative >= 1.0) all_rows.push_back(cat.label(e));
  }
  CHECK(at_least_07.size() == 7);
  CHECK(std::find(at_least_07.begin(), at_least_07.end(), "W:Off") == at_least_07.end());
  CHECK(all_rows == std::vector<std::string>{"I:Off"});
}

TEST_CASE("group support counts multiplicity") {
  auto db = fixtures::table3();
  const auto& cat = db.catalog;
  const EventId son_ton[] = {cat.at("S", "On"), cat.at("T", "On")};
  CHECK(supp_group(db, son_ton).count == rows_with(db, {son_ton[0], son_ton[1]}));
  // IOn twice: sequences 2 and 4 hold two IOn instances, sequence 1 only one.
  const EventId ion_twice[] = {cat.at("I", "On"), cat.at("I", "On")};
  CHECK(supp_group(db, ion_twice).count == 2);
  CHECK_THROWS_AS(supp_group(db, std::span<const EventId>{}), std::invalid_argument);
  const EventId unknown[] = {99};
  CHECK_THROWS_AS(supp_group(db, unknown), std::out_of_range);
  CHECK_THROWS_AS(supp_event(SequenceDatabase{}, 0), std::invalid_argument);
}

TEST_CASE("pair confidence on the running example") {
  auto db = fixtures::table3();
  const auto& cat = db.catalog;
  const EventId son = cat.at("S", "On"), ton = cat.at("T", "On"), woff = cat.at("W", "Off");
  const double expect = static_cast<double>(rows_with(db, {son, ton})) /
                        static_cast<double>(std::max(rows_with(db, {son}), rows_with(db, {ton})));
  CHECK(conf_pair(db, son, ton) == doctest::Approx(expect));
  CHECK(conf_pair(db, son, ton) == doctest::Approx(1.0));
  CHECK(conf_pair(db, son, woff) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("pattern support and confidence") {
  auto db = fixtures::table3();
  const auto& cat = db.catalog;
  MiningConfig c;
  c.epsilon = 60;
  c.min_overlap = 300;
  c.t_max = hm(0, 45);
  TemporalPattern p({cat.at("S", "On"), cat.at("T", "On")}, {RelationKind::Contains});
  auto s = supp_pattern(db, p, c);
  CHECK(s.count == 3);
  // Support equal to the most frequent constituent: confidence 1.
  CHECK(conf_pattern(db, p, c) == doctest::Approx(1.0));
  CHECK_THROWS_AS(supp_pattern(db, TemporalPattern(), c), std::invalid_argument);
}

TEST_CASE("support and confidence are anti-monotone over sub-patterns") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto inst = fixtures::random_instance(seed, Mode::Frequent, static_cast<Duration>(seed % 3));
    const auto& db = inst.db;
    std::mt19937_64 rng(seed);
    const auto n_events = static_cast<EventId>(db.catalog.size());
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<EventId> ev;
      for (int i = 0; i < 3; ++i) ev.push_back(static_cast<EventId>(rng() % n_events));
      std::vector<RelationKind> rel;
      for (int i = 0; i < 3; ++i) rel.push_back(kRelations[rng() % 3]);
      TemporalPattern p(ev, rel);
      const auto sp = supp_pattern(db, p, inst.config).count;
      for (auto e : ev) CHECK(sp <= supp_event(db, e).count);
      CHECK(sp <= supp_group(db, ev).count);
      double cp = 0;
      bool have_conf = true;
      try {
        cp = conf_pattern(db, p, inst.config);
      } catch (const std::domain_error&) {
        have_conf = false;
      }
      for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}}) {
        const std::size_t slots[] = {a, b};
        auto sub = p.sub_pattern(slots);
        CHECK(sp <= supp_pattern(db, sub, inst.config).count);
        if (have_conf && sp > 0) CHECK(conf_pattern(db, sub, inst.config) >= cp - 1e-12);
      }
    }
  }
}
