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

// Closed-form links between normalized mutual information and the support /
// confidence of a symbol pair, and the rule that turns them into per
// series-pair NMI thresholds.
//
// Notation: for a series pair (X, Y) and a target symbol pair (X1, Y1),
//   lambda1 = min p(X_i), lambda2 = p(Y1), lambda3 / lambda4 = joint
//   probability / conditional p(X_i | Y_j) of the least predictable cell,
//   lambda5 = max p(X_i), vartheta = sequence-vs-timestamp correction.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "tempo/information.hpp"
#include "tempo/types.hpp"

namespace tempo {

/// Lower bound on supp(X1, Y1) implied by NMI >= mu_min:
///   lambda2 * exp(W((1 - mu_min) ln(lambda1) / lambda2)).
/// Returns 0 (vacuous) when the Lambert argument falls below -1/e.
double support_lower_bound(double lambda1, double lambda2, double mu_min);

/// Smallest NMI for which support_lower_bound reaches sigma_min. Values above
/// 1 mean no NMI can guarantee sigma_min.
double mu_min_for_support(double sigma_min, double lambda1, double lambda2);

/// Lower bound on conf(X1, Y1) given supp >= sigma_min and NMI >= mu_min:
///   sigma_min * lambda1^((1-mu)/sigma_min) * ((n_x-1)/(1-sigma_min))^(lambda3/sigma_min).
double confidence_lower_bound(double sigma_min, double mu_min, double lambda1, double lambda3,
                              std::size_t n_x);

/// Inversion of confidence_lower_bound for the NMI reaching delta.
double mu_min_for_confidence(double delta, double sigma_min, double lambda1, double lambda3,
                             std::size_t n_x);

/// Upper bound on supp(X1, Y1) implied by NMI <= mu_max:
///   lambda2 * exp(W(((1-mu) ln lambda5 - (1-sigma_min) ln lambda4) / lambda2)) + vartheta.
/// Returns +infinity (vacuous) when the Lambert argument falls below -1/e.
double support_upper_bound(double sigma_min, double mu_max, double lambda2, double lambda4,
                           double lambda5, double vartheta);

/// Largest NMI for which support_upper_bound stays at or below sigma_max, or
/// nullopt when no NMI achieves it (sigma_max too close to vartheta).
std::optional<double> mu_max_for_support(double sigma_max, double sigma_min, double lambda2,
                                         double lambda4, double lambda5, double vartheta);

enum class MuSource { None, Support, Confidence, SupportUpper };
std::string_view to_string(MuSource source) noexcept;

struct MuThresholds {
  /// Pairs whose NMI falls below mu_min are pruned.
  double mu_min = 0.0;
  /// Rare mode: pairs whose NMI exceeds mu_max are pruned; nullopt = no cap.
  std::optional<double> mu_max;
  /// False when no target yields a usable bound; the pair is then kept.
  bool prunable = false;
  MuSource min_source = MuSource::None;
  MuSource max_source = MuSource::None;
  std::size_t targets_considered = 0;
  std::size_t targets_vacuous = 0;
};

/// Thresholds for one target symbol pair (stats oriented X -> Y).
MuThresholds select_mu(const MiningConfig& config, const PairStats& stats);

/// Thresholds for a series pair from the statistics of every candidate
/// target (both orientations): the smallest mu_min and largest mu_max over
/// targets with usable bounds, i.e. the choice that prunes least.
MuThresholds select_mu(const MiningConfig& config, std::span<const PairStats> targets);

}  // namespace tempo
