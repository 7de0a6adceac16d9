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

#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "tempo/information.hpp"

using namespace tempo;
using fixtures::hm;

TEST_CASE("entropy of simple distributions") {
  const double fair[] = {0.5, 0.5};
  CHECK(entropy(fair) == doctest::Approx(1.0));
  const double sure[] = {1.0, 0.0};
  CHECK(entropy(sure) == doctest::Approx(0.0));
  const double four[] = {0.25, 0.25, 0.25, 0.25};
  CHECK(entropy(four) == doctest::Approx(2.0));
  const double bad[] = {0.5, 0.6};
  CHECK_THROWS_AS(entropy(bad), std::invalid_argument);
  const double neg[] = {1.5, -0.5};
  CHECK_THROWS_AS(entropy(neg), std::invalid_argument);
  CHECK_THROWS(JointDistribution(2, 2, {0.5, 0.5}));
}

TEST_CASE("mutual information of a 2x2 joint by direct summation") {
  JointDistribution j(2, 2, {0.4, 0.1, 0.1, 0.4});
  // Marginals are 0.5/0.5, so MI = sum p log2(p / 0.25).
  const double direct = 2 * 0.4 * std::log2(0.4 / 0.25) + 2 * 0.1 * std::log2(0.1 / 0.25);
  CHECK(mutual_information(j) == doctest::Approx(direct).epsilon(1e-12));
  // MI = H(X) - H(X|Y).
  const auto px = j.marginal_x();
  CHECK(mutual_information(j) == doctest::Approx(entropy(px) - conditional_entropy(j)));
  CHECK(nmi(j) == doctest::Approx(direct));  // H(X) = 1 bit
}

TEST_CASE("nmi extremes") {
  JointDistribution same(3, 3, {0.2, 0, 0, 0, 0.3, 0, 0, 0, 0.5});
  CHECK(nmi(same) == doctest::Approx(1.0));
  CHECK(nmi(same, NmiNormalizer::ByY) == doctest::Approx(1.0));
  const double px[] = {0.3, 0.7}, py[] = {0.2, 0.5, 0.3};
  std::vector<double> prod;
  for (double a : px) {
    for (double b : py) prod.push_back(a * b);
  }
  JointDistribution indep(2, 3, prod);
  CHECK(mutual_information(indep) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(nmi(indep) == doctest::Approx(0.0).epsilon(1e-12));
  // Constant X has zero entropy: NMI is defined as 0.
  JointDistribution constant(1, 2, {0.4, 0.6});
  CHECK(nmi(constant) == 0.0);
}

TEST_CASE("nmi is symmetric under transposition and bounded") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const std::size_t r = 2 + rng() % 3, c = 2 + rng() % 3;
    std::vector<double> p(r * c);
    double s = 0;
    for (auto& v : p) s += v = u(rng) < 0.2 ? 0.0 : u(rng);
    if (s == 0) continue;
    for (auto& v : p) v /= s;
    JointDistribution j(r, c, p);
    const double a = nmi(j, NmiNormalizer::ByX), b = nmi(j.transposed(), NmiNormalizer::ByY);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(conditional_entropy(j) <= entropy(j.marginal_x()) + 1e-12);
  }
}

TEST_CASE("balanced two-symbol series give equal lambda bounds") {
  SymbolicDatabase db;
  db.grid = {0, 1, 8};
  db.series.push_back({"A", {"a0", "a1"}, {0, 1, 0, 1, 0, 1, 0, 1}});
  db.series.push_back({"B", {"b0", "b1"}, {0, 1, 0, 1, 0, 1, 0, 1}});
  auto s = pair_statistics(db, 0, 1, 1, 1, 2);
  CHECK(s.lambda1 == doctest::Approx(0.5));
  CHECK(s.lambda5 == doctest::Approx(0.5));
  CHECK(s.lambda2 == doctest::Approx(0.5));
  CHECK(s.nmi_xy == doctest::Approx(1.0));
  CHECK(s.p_target == doctest::Approx(0.5));
}

TEST_CASE("window of one sample has no correction term") {
  auto db = fixtures::table1();
  auto s = pair_statistics(db, db.index_of("S"), db.index_of("W"), 1, 1, 1);
  CHECK(s.vartheta_count == 0);
  CHECK(s.vartheta == 0.0);
  CHECK(s.supp_seq() == s.supp_syb());
}

TEST_CASE("correction term on the running example by direct recount") {
  auto sym = fixtures::table1();
  const std::size_t xs = sym.index_of("S"), ys = sym.index_of("W");
  const auto& x = sym.series[xs];
  const auto& y = sym.series[ys];
  const std::uint32_t on = 1;  // alphabets are sorted: Off, On
  REQUIRE(x.alphabet[on] == "On");
  auto s = pair_statistics(sym, xs, ys, on, on, 9);
  // s_ij: co-occurring samples; g_i: windows holding at least one of them.
  std::size_t both = 0, weighted = 0, missing = 0;
  for (std::size_t w = 0; w < 4; ++w) {
    std::size_t hits = 0;
    for (std::size_t i = w * 9; i < w * 9 + 9; ++i) hits += x.codes[i] == on && y.codes[i] == on;
    both += hits;
    if (hits > 0) {
      weighted += 9;
      missing += 9 - hits;
    }
  }
  CHECK(s.cooccur_samples == both);
  CHECK(s.weighted_windows == weighted);
  CHECK(s.vartheta_count == missing);
  CHECK(s.windows_with_target == 3);
  CHECK(s.weighted_windows == s.cooccur_samples + s.vartheta_count);
  CHECK(s.supp_syb() <= s.supp_seq());
  CHECK(s.supp_seq() == doctest::Approx(27.0 / 36.0));
  // The same windows seen as sequences: SOn and WOn instances intersect in 3 of 4.
  auto db = build_sequence_db(sym, hm(0, 45), 0, hm(0, 45));
  const EventId son = db.catalog.at("S", "On"), won = db.catalog.at("W", "On");
  std::size_t g = 0;
  for (const auto& seq : db.sequences) {
    bool hit = false;
    for (const auto& a : seq.instances) {
      for (const auto& b : seq.instances) {
        hit |= a.event == son && b.event == won && a.interval.intersects(b.interval);
      }
    }
    g += hit;
  }
  CHECK(g == s.windows_with_target);
}

TEST_CASE("lambda3 and lambda4 come from the smallest conditional outside the target cell") {
  SymbolicDatabase db;
  db.grid = {0, 1, 10};
  db.series.push_back({"X", {"x0", "x1"}, {0, 0, 0, 0, 0, 0, 1, 1, 1, 0}});
  db.series.push_back({"Y", {"y0", "y1"}, {0, 0, 0, 0, 1, 1, 1, 1, 1, 1}});
  auto s = pair_statistics(db, 0, 1, 0, 0, 5);
  // Cells: (x0,y0)=4, (x0,y1)=3, (x1,y0)=0, (x1,y1)=3. Target (x0,y0) is skipped, and
  // (x1,y0) is empty; p(x0|y1)=p(x1|y1)=0.5, first in scan order wins.
  REQUIRE(s.lambda34_defined);
  CHECK(s.lambda4 == doctest::Approx(0.5));
  CHECK(s.lambda3 == doctest::Approx(0.3));
  CHECK(s.lambda1 == doctest::Approx(0.3));
  CHECK(s.lambda5 == doctest::Approx(0.7));
  CHECK(s.lambda2 == doctest::Approx(0.4));
  CHECK_THROWS_AS(pair_statistics(db, 0, 1, 2, 0, 5), std::out_of_range);
}
