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

#include "tempo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tempo/lambert.hpp"

namespace tempo {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

// Lambert argument, snapped onto the branch point when rounding pushed it just
// below; nullopt when it lies genuinely outside the real domain.
std::optional<double> lambert_argument(double arg) {
  if (arg >= -kInvE) return arg;
  if (arg >= -kInvE * (1.0 + 1e-12)) return -kInvE;
  return std::nullopt;
}

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in (0, 1)");
  }
}

void require_half_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in (0, 1]");
  }
}

}  // namespace

double support_lower_bound(double lambda1, double lambda2, double mu_min) {
  require_open_unit(lambda1, "lambda1");
  require_half_open_unit(lambda2, "lambda2");
  const auto arg = lambert_argument((1.0 - mu_min) * std::log(lambda1) / lambda2);
  if (!arg) return 0.0;
  return lambda2 * std::exp(lambert_w0(*arg));
}

double mu_min_for_support(double sigma_min, double lambda1, double lambda2) {
  require_open_unit(lambda1, "lambda1");
  require_half_open_unit(lambda2, "lambda2");
  if (sigma_min < 0.0) throw std::domain_error("sigma_min must be non-negative");
  const double ratio = sigma_min / lambda2;
  if (ratio <= kInvE) {
    // Below the knee the bound's minimum lambda2 / e already clears sigma_min.
    return 1.0 - lambda2 / (std::numbers::e * std::log(1.0 / lambda1));
  }
  return 1.0 - sigma_min * std::log(ratio) / std::log(lambda1);
}

double confidence_lower_bound(double sigma_min, double mu_min, double lambda1, double lambda3,
                              std::size_t n_x) {
  require_open_unit(sigma_min, "sigma_min");
  require_open_unit(lambda1, "lambda1");
  if (lambda3 < 0.0 || lambda3 > 1.0) throw std::domain_error("lambda3 must lie in [0, 1]");
  if (n_x < 2) throw std::domain_error("the X alphabet needs at least two symbols");
  const double nx1 = static_cast<double>(n_x - 1);
  return sigma_min * std::pow(lambda1, (1.0 - mu_min) / sigma_min) *
         std::pow(nx1 / (1.0 - sigma_min), lambda3 / sigma_min);
}

double mu_min_for_confidence(double delta, double sigma_min, double lambda1, double lambda3,
                             std::size_t n_x) {
  require_open_unit(sigma_min, "sigma_min");
  require_open_unit(lambda1, "lambda1");
  if (lambda3 < 0.0 || lambda3 > 1.0) throw std::domain_error("lambda3 must lie in [0, 1]");
  if (n_x < 2) throw std::domain_error("the X alphabet needs at least two symbols");
  if (!(delta > 0.0)) return -std::numeric_limits<double>::infinity();
  const double nx1 = static_cast<double>(n_x - 1);
  const double inner =
      delta / sigma_min * std::pow((1.0 - sigma_min) / nx1, lambda3 / sigma_min);
  return 1.0 - sigma_min * std::log(inner) / std::log(lambda1);
}

double support_upper_bound(double sigma_min, double mu_max, double lambda2, double lambda4,
                           double lambda5, double vartheta) {
  require_half_open_unit(lambda2, "lambda2");
  require_half_open_unit(lambda4, "lambda4");
  require_open_unit(lambda5, "lambda5");
  const auto arg = lambert_argument(
      ((1.0 - mu_max) * std::log(lambda5) - (1.0 - sigma_min) * std::log(lambda4)) / lambda2);
  if (!arg) return std::numeric_limits<double>::infinity();
  return lambda2 * std::exp(lambert_w0(*arg)) + vartheta;
}

std::optional<double> mu_max_for_support(double sigma_max, double sigma_min, double lambda2,
                                         double lambda4, double lambda5, double vartheta) {
  require_half_open_unit(lambda2, "lambda2");
  require_half_open_unit(lambda4, "lambda4");
  require_open_unit(lambda5, "lambda5");
  const double s = sigma_max - vartheta;
  if (s <= 0.0) return std::nullopt;
  const double ratio = s / lambda2;
  // The bound never drops below lambda2 / e + vartheta.
  if (ratio < kInvE) return std::nullopt;
  return 1.0 - (s * std::log(ratio) + (1.0 - sigma_min) * std::log(lambda4)) / std::log(lambda5);
}

std::string_view to_string(MuSource source) noexcept {
  switch (source) {
    case MuSource::None: return "none";
    case MuSource::Support: return "support";
    case MuSource::Confidence: return "confidence";
    case MuSource::SupportUpper: return "support_upper";
  }
  return "?";
}

MuThresholds select_mu(const MiningConfig& config, const PairStats& stats) {
  MuThresholds out;
  out.targets_considered = 1;
  if (stats.p_target <= 0.0) {
    ++out.targets_vacuous;
    return out;
  }

  std::optional<double> mu_min;
  MuSource source = MuSource::None;
  try {
    const double c1 = mu_min_for_support(config.sigma_min, stats.lambda1, stats.lambda2);
    mu_min = c1;
    source = MuSource::Support;
  } catch (const std::domain_error&) {
  }
  // The confidence bound presumes the target's Y symbol is at least as
  // frequent as its X symbol.
  if (stats.py[stats.target_y] >= stats.px[stats.target_x] && stats.lambda34_defined) {
    try {
      const double c2 = mu_min_for_confidence(config.delta, config.sigma_min, stats.lambda1,
                                              stats.lambda3, stats.n_x);
      if (!mu_min || c2 > *mu_min) {
        mu_min = c2;
        source = MuSource::Confidence;
      }
    } catch (const std::domain_error&) {
    }
  }
  if (!mu_min || !std::isfinite(*mu_min) || *mu_min > 1.0) {
    ++out.targets_vacuous;
    return out;
  }
  out.prunable = true;
  out.mu_min = std::max(0.0, *mu_min);
  out.min_source = source;

  if (config.mode == Mode::Rare && config.sigma_max && stats.lambda34_defined) {
    try {
      auto m = mu_max_for_support(*config.sigma_max, config.sigma_min, stats.lambda2,
                                  stats.lambda4, stats.lambda5, stats.vartheta);
      if (m && std::isfinite(*m) && *m < 1.0) {
        out.mu_max = std::max(0.0, *m);
        out.max_source = MuSource::SupportUpper;
      }
    } catch (const std::domain_error&) {
    }
  }
  return out;
}

MuThresholds select_mu(const MiningConfig& config, std::span<const PairStats> targets) {
  MuThresholds out;
  bool any_uncapped = false;
  for (const auto& stats : targets) {
    const auto t = select_mu(config, stats);
    ++out.targets_considered;
    out.targets_vacuous += t.targets_vacuous;
    if (!t.prunable) continue;
    if (!out.prunable || t.mu_min < out.mu_min) {
      out.mu_min = t.mu_min;
      out.min_source = t.min_source;
    }
    out.prunable = true;
    if (!t.mu_max) {
      any_uncapped = true;
    } else if (!out.mu_max || *t.mu_max > *out.mu_max) {
      out.mu_max = t.mu_max;
      out.max_source = t.max_source;
    }
  }
  if (any_uncapped || !out.prunable) {
    out.mu_max.reset();
    out.max_source = MuSource::None;
  }
  if (!out.prunable) out.mu_min = 0.0;
  return out;
}

}  // namespace tempo
