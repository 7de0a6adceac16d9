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

// Entropy, mutual information and the per series-pair statistics that feed
// the NMI-based bounds. All logarithms are base 2; 0 * log 0 = 0.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tempo/transform.hpp"

namespace tempo {

/// Joint probability table p(x, y) stored row-major: rows are X symbols,
/// columns are Y symbols.
struct JointDistribution {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> p;

  JointDistribution() = default;
  JointDistribution(std::size_t r, std::size_t c, std::vector<double> probs);

  double at(std::size_t x, std::size_t y) const { return p[x * cols + y]; }
  std::vector<double> marginal_x() const;
  std::vector<double> marginal_y() const;
  JointDistribution transposed() const;
};

/// Shannon entropy in bits; throws std::invalid_argument when `p` is not a
/// distribution (negative entries or sum off by more than 1e-9).
double entropy(std::span<const double> p);
/// H(X | Y).
double conditional_entropy(const JointDistribution& joint);
/// I(X; Y).
double mutual_information(const JointDistribution& joint);

enum class NmiNormalizer { ByX, ByY };

/// I(X;Y) / H(X) (ByX) or I(X;Y) / H(Y) (ByY). A constant normalizing
/// series has zero entropy and yields 0.
double nmi(const JointDistribution& joint, NmiNormalizer normalizer = NmiNormalizer::ByX);

/// Symbol co-occurrence counts of two aligned series, overall and per
/// non-overlapping window of `window_samples` timestamps.
struct PairTable {
  std::size_t series_x = 0;
  std::size_t series_y = 0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::size_t samples = 0;
  std::size_t window_samples = 1;
  std::vector<std::size_t> counts;                  // nx * ny
  // Per cell: windows holding the cell at least once, and the summed sizes
  // of those windows.
  std::vector<std::size_t> windows_with_cell;
  std::vector<std::size_t> weighted_windows;

  JointDistribution joint() const;
  std::size_t cell(std::size_t x, std::size_t y) const { return counts[x * ny + y]; }
};

PairTable pair_table(const SymbolicDatabase& db, std::size_t series_x, std::size_t series_y,
                     std::size_t window_samples);

/// Statistics of a series pair (X, Y) relative to a target symbol pair
/// (X1, Y1).
struct PairStats {
  std::size_t series_x = 0;
  std::size_t series_y = 0;
  std::uint32_t target_x = 0;
  std::uint32_t target_y = 0;
  JointDistribution joint;
  std::vector<double> px;
  std::vector<double> py;
  double nmi_xy = 0.0;  // I / H(X)
  double nmi_yx = 0.0;  // I / H(Y)
  double p_target = 0.0;      // p(X1, Y1) over timestamps
  double lambda1 = 0.0;       // min p(X_i) over occurring X symbols
  double lambda2 = 0.0;       // p(Y1)
  double lambda3 = 0.0;       // p(X_i, Y_j) of the cell minimizing p(X_i | Y_j)
  double lambda4 = 0.0;       // that minimal p(X_i | Y_j)
  double lambda5 = 0.0;       // max p(X_i)
  double vartheta = 0.0;      // sequence-vs-timestamp support correction
  std::size_t n_x = 0;        // |alphabet of X|
  bool lambda34_defined = false;

  // Exact integer bookkeeping behind the correction term: with s the
  // timestamps where X1 and Y1 co-occur, g the windows containing such a
  // timestamp and m_i the window sizes,
  //   sum_i m_i g_i = s + vartheta_count.
  std::size_t samples = 0;
  std::size_t cooccur_samples = 0;
  std::size_t windows_with_target = 0;
  std::size_t weighted_windows = 0;  // sum_i m_i g_i
  std::size_t vartheta_count = 0;

  double supp_syb() const { return p_target; }
  /// Support in the windowed database expressed on the timestamp scale.
  double supp_seq() const {
    return static_cast<double>(weighted_windows) / static_cast<double>(samples);
  }
};

PairStats pair_statistics(const PairTable& table, std::uint32_t target_x, std::uint32_t target_y);
PairStats pair_statistics(const SymbolicDatabase& db, std::size_t series_x, std::size_t series_y,
                          std::uint32_t target_x, std::uint32_t target_y,
                          std::size_t window_samples);

}  // namespace tempo
