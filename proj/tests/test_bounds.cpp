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
#include <numbers>
#include <random>

#include "doctest.h"
#include "sampling.hpp"
#include "tempo/bounds.hpp"
#include "tempo/lambert.hpp"

using namespace tempo;

namespace {

constexpr double kE = std::numbers::e;

// Root of s * ln(s / lambda2) = rhs on the increasing branch [lambda2 / e, lambda2].
double bisect_support(double lambda2, double rhs) {
  double lo = lambda2 / kE, hi = lambda2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::log(mid / lambda2) < rhs ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

PairStats stats_for(double p11, double px1, double py1) {
  // Two binary series with p(X1,Y1) = p11 and the given marginals; target is cell (0,0).
  const double p10 = px1 - p11, p01 = py1 - p11, p00 = 1 - p11 - p10 - p01;
  SymbolicDatabase db;
  const int n = 1000;
  db.grid = {0, 1, static_cast<std::size_t>(n)};
  SymbolicSeries x{"X", {"a", "b"}, {}}, y{"Y", {"c", "d"}, {}};
  auto push = [&](double p, std::uint32_t a, std::uint32_t b) {
    for (int i = 0; i < static_cast<int>(std::lround(p * n)); ++i) {
      x.codes.push_back(a);
      y.codes.push_back(b);
    }
  };
  push(p11, 0, 0);
  push(p10, 0, 1);
  push(p01, 1, 0);
  push(p00, 1, 1);
  db.series = {x, y};
  return pair_statistics(db, 0, 1, 0, 0, 1);
}

}  // namespace

TEST_CASE("lambert W0 at known points") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(kE) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambert_w0(-1.0 / kE) == doctest::Approx(-1.0).epsilon(1e-7));
  const double w = lambert_w0(0.5);
  CHECK(std::abs(w * std::exp(w) - 0.5) < 1e-12);
  CHECK(lambert_w0(2 * kE * kE) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK_THROWS_AS(lambert_w0(-0.5), std::domain_error);
  CHECK_THROWS_AS(lambert_w0(std::nan("")), std::domain_error);
}

TEST_CASE("lambert W0 residual across its domain") {
  for (int i = 0; i <= 2000; ++i) {
    const double x = -1.0 / kE + (1e3 + 1.0 / kE) * i / 2000.0;
    const double w = lambert_w0(x);
    CAPTURE(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, std::abs(x)));
    CHECK(w >= -1.0);
  }
}

TEST_CASE("support lower bound") {
  // Full dependence: the bound is lambda2 itself.
  CHECK(support_lower_bound(0.2, 0.3, 1.0) == doctest::Approx(0.3));
  // lambda1=0.2, lambda2=0.3, mu=0.5 puts the Lambert argument at -2.68, outside
  // the real domain: no lower bound follows.
  CHECK(0.5 * std::log(0.2) / 0.3 < -1.0 / kE);
  CHECK(support_lower_bound(0.2, 0.3, 0.5) == 0.0);
  // Inside the domain, compare against an independent root of the transcendental form.
  for (double l1 : {0.9, 0.75, 0.6}) {
    const double rhs = (1 - 0.5) * std::log(l1);
    if (rhs / 0.3 < -1.0 / kE) continue;
    const double got = support_lower_bound(l1, 0.3, 0.5);
    CHECK(got == doctest::Approx(bisect_support(0.3, rhs)).epsilon(1e-12));
    CHECK(got * std::log(got / 0.3) == doctest::Approx(rhs).epsilon(1e-12));
  }
  // Past the branch point the bound is vacuous.
  CHECK(support_lower_bound(0.01, 0.1, 0.0) == 0.0);
  CHECK_THROWS_AS(support_lower_bound(1.0, 0.3, 0.5), std::domain_error);
  CHECK_THROWS_AS(support_lower_bound(0.2, 0.0, 0.5), std::domain_error);
}

TEST_CASE("mu_min for support: knee continuity, flat branch and round trip") {
  const double l1 = 0.15, l2 = 0.6;
  const double knee = l2 / kE;
  const double below = mu_min_for_support(knee * (1 - 1e-12), l1, l2);
  const double above = mu_min_for_support(knee * (1 + 1e-12), l1, l2);
  CHECK(below == doctest::Approx(above).epsilon(1e-9));
  CHECK(mu_min_for_support(1e-9, l1, l2) == mu_min_for_support(0.1, l1, l2));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int t = 0; t < 5000; ++t) {
    const double a = u(rng), b = u(rng), sigma = u(rng) * b;
    const double mu = mu_min_for_support(sigma, a, b);
    CHECK(support_lower_bound(a, b, mu) >= sigma - 1e-9);
  }
}

TEST_CASE("confidence lower bound and its inverse") {
  CHECK(confidence_lower_bound(0.4, 1.0, 0.2, 0.0, 3) == doctest::Approx(0.4));
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int t = 0; t < 5000; ++t) {
    const double sigma = u(rng), l1 = u(rng), l3 = u(rng) * 0.3, delta = u(rng);
    const std::size_t nx = 2 + rng() % 4;
    const double mu = mu_min_for_confidence(delta, sigma, l1, l3, nx);
    CHECK(confidence_lower_bound(sigma, mu, l1, l3, nx) == doctest::Approx(delta).epsilon(1e-9));
  }
  CHECK_THROWS_AS(confidence_lower_bound(0.4, 0.5, 0.2, 0.1, 1), std::domain_error);
}

TEST_CASE("support upper bound and its inverse") {
  // Lambert argument 0 and no correction: the bound is lambda2.
  const double sigma = 0.3, l4 = 0.2, l5 = 0.6, l2 = 0.5;
  const double mu0 = 1 - (1 - sigma) * std::log(l4) / std::log(l5);
  CHECK(support_upper_bound(sigma, mu0, l2, l4, l5, 0.0) == doctest::Approx(l2).epsilon(1e-12));
  CHECK(support_upper_bound(sigma, mu0, l2, l4, l5, 0.05) == doctest::Approx(l2 + 0.05));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  int checked = 0;
  for (int t = 0; t < 5000; ++t) {
    const double smin = u(rng) * 0.5, b2 = u(rng), b4 = u(rng), b5 = u(rng), th = u(rng) * 0.1;
    const double smax = smin + (1 - smin) * u(rng);
    auto mu = mu_max_for_support(smax, smin, b2, b4, b5, th);
    if (!mu) {
      CHECK(((smax - th) <= 0 || (smax - th) / b2 < 1 / kE));
      continue;
    }
    ++checked;
    CHECK(support_upper_bound(smin, *mu, b2, b4, b5, th) == doctest::Approx(smax).epsilon(1e-9));
  }
  CHECK(checked > 1000);
}

TEST_CASE("select_mu rules") {
  MiningConfig c;
  c.sigma_min = 0.2;
  c.delta = 0.15;
  auto s = stats_for(0.3, 0.4, 0.5);
  auto t = select_mu(c, s);
  REQUIRE(t.prunable);
  CHECK_FALSE(t.mu_max.has_value());  // frequent mode
  // Hand evaluation of both threshold formulas; p(Y1) >= p(X1) so the confidence bound applies.
  const double l1 = 0.4, l2 = 0.5;
  const double c1 = 1 - 0.2 * std::log(0.2 / l2) / std::log(l1);
  const double c2 = 1 - 0.2 * std::log(0.15 / 0.2 * std::pow((1 - 0.2) / 1.0, s.lambda3 / 0.2)) /
                            std::log(l1);
  CHECK(t.mu_min == doctest::Approx(std::max(0.0, std::max(c1, c2))));
  CHECK(t.min_source == (c2 > c1 ? MuSource::Confidence : MuSource::Support));

  c.mode = Mode::Rare;
  c.sigma_max = 0.35;
  auto r = select_mu(c, s);
  auto m = mu_max_for_support(0.35, 0.2, s.lambda2, s.lambda4, s.lambda5, s.vartheta);
  REQUIRE(m.has_value());
  if (*m < 1.0) {
    REQUIRE(r.mu_max.has_value());
    CHECK(*r.mu_max == doctest::Approx(std::max(0.0, *m)));
  }

  // A target that never co-occurs is vacuous and leaves the pair unprunable.
  auto none = stats_for(0.0, 0.4, 0.5);
  auto v = select_mu(c, none);
  CHECK_FALSE(v.prunable);
  CHECK(v.targets_vacuous == 1);
  const PairStats both[] = {s, none};
  auto pair = select_mu(c, both);
  CHECK(pair.prunable);
  CHECK(pair.targets_considered == 2);
  CHECK(pair.mu_min == doctest::Approx(select_mu(c, s).mu_min));
}

TEST_CASE("stricter thresholds never relax the screening thresholds") {
  std::mt19937_64 rng(9);
  std::size_t compared = 0;
  for (int t = 0; t < 3000; ++t) {
    auto cs = sampling::sample_case(rng);
    MiningConfig lo;
    lo.sigma_min = 0.05 + 0.3 * static_cast<double>(rng() % 100) / 100.0;
    lo.delta = 0.05 + 0.4 * static_cast<double>(rng() % 100) / 100.0;
    lo.mode = Mode::Rare;
    lo.sigma_max = std::min(1.0, lo.sigma_min + 0.5);
    auto base = select_mu(lo, cs.stats);
    if (!base.prunable) continue;
    ++compared;
    // Higher delta: the confidence threshold can only rise.
    auto more_conf = lo;
    more_conf.delta = std::min(1.0, lo.delta + 0.1);
    auto a = select_mu(more_conf, cs.stats);
    if (a.prunable) CHECK(a.mu_min >= base.mu_min - 1e-12);
    // Higher sigma_min: the support threshold can only rise.
    if (cs.lambda1 < 1.0) {
      CHECK(mu_min_for_support(lo.sigma_min + 0.1, cs.lambda1, cs.lambda2) >=
            mu_min_for_support(lo.sigma_min, cs.lambda1, cs.lambda2) - 1e-12);
    }
    // Lower sigma_max: the upper NMI cap can only fall.
    auto tighter = lo;
    tighter.sigma_max = *lo.sigma_max - 0.1;
    auto b = select_mu(tighter, cs.stats);
    if (base.mu_max && b.mu_max) CHECK(*b.mu_max <= *base.mu_max + 1e-12);
  }
  CHECK(compared > 500);
}

TEST_CASE("analytic bounds hold on sampled windows under the hypotheses the derivations use") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t n1 = 0, n2 = 0, n3 = 0;
  for (int t = 0; t < 4000; ++t) {
    auto c = sampling::sample_case(rng);
    CHECK(c.stats.nmi_xy == doctest::Approx(c.nmi).epsilon(1e-9));
    CHECK(c.stats.lambda1 == doctest::Approx(c.lambda1));
    CHECK(c.stats.lambda4 == doctest::Approx(c.lambda4).epsilon(1e-12));
    CHECK(c.stats.supp_seq() == doctest::Approx(c.supp_seq()));
    if (c.lambda1 >= 1.0) continue;
    const double mu = c.nmi * u(rng);
    if (c.p11 >= c.lambda2 / kE) {
      ++n1;
      CHECK(c.supp_seq() >= support_lower_bound(c.lambda1, c.lambda2, mu) - 1e-9);
    }
    if (c.lambda34 && c.lambda2 >= c.stats.px[c.x1] && c.p11 < 1.0) {
      ++n2;
      const double sigma = c.p11 * (0.01 + 0.98 * u(rng));
      CHECK(c.confidence() >=
            confidence_lower_bound(sigma, mu, c.lambda1, c.stats.lambda3, c.stats.n_x) - 1e-9);
    }
    if (c.lambda34 && c.lambda5 < 1.0) {
      ++n3;
      const double mu_max = c.nmi + (1 - c.nmi) * u(rng);
      const double sigma = c.p11 * u(rng);
      CHECK(c.supp_seq() <= support_upper_bound(sigma, mu_max, c.lambda2, c.lambda4, c.lambda5,
                                                c.stats.vartheta) + 1e-9);
    }
  }
  CHECK(n1 > 500);
  CHECK(n2 > 500);
  CHECK(n3 > 500);
}
