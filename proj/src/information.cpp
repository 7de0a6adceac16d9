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

#include "tempo/information.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tempo {

namespace {

constexpr double kNormTolerance = 1e-9;

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

void check_distribution(std::span<const double> p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument("probabilities must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTolerance) {
    throw std::invalid_argument("probabilities must sum to 1");
  }
}

}  // namespace

JointDistribution::JointDistribution(std::size_t r, std::size_t c, std::vector<double> probs)
    : rows(r), cols(c), p(std::move(probs)) {
  if (rows == 0 || cols == 0 || p.size() != rows * cols) {
    throw std::invalid_argument("joint distribution shape mismatch");
  }
  check_distribution(p);
}

std::vector<double> JointDistribution::marginal_x() const {
  std::vector<double> m(rows, 0.0);
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) m[x] += at(x, y);
  }
  return m;
}

std::vector<double> JointDistribution::marginal_y() const {
  std::vector<double> m(cols, 0.0);
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) m[y] += at(x, y);
  }
  return m;
}

JointDistribution JointDistribution::transposed() const {
  std::vector<double> t(p.size());
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) t[y * rows + x] = at(x, y);
  }
  return JointDistribution(cols, rows, std::move(t));
}

double entropy(std::span<const double> p) {
  check_distribution(p);
  double h = 0.0;
  for (double v : p) h -= plogp(v);
  return std::max(0.0, h);
}

double conditional_entropy(const JointDistribution& joint) {
  const auto py = joint.marginal_y();
  double h = 0.0;
  for (std::size_t x = 0; x < joint.rows; ++x) {
    for (std::size_t y = 0; y < joint.cols; ++y) {
      const double pxy = joint.at(x, y);
      if (pxy > 0.0) h -= pxy * std::log2(pxy / py[y]);
    }
  }
  return std::max(0.0, h);
}

double mutual_information(const JointDistribution& joint) {
  const auto px = joint.marginal_x();
  const auto py = joint.marginal_y();
  double mi = 0.0;
  for (std::size_t x = 0; x < joint.rows; ++x) {
    for (std::size_t y = 0; y < joint.cols; ++y) {
      const double pxy = joint.at(x, y);
      if (pxy > 0.0) mi += pxy * std::log2(pxy / (px[x] * py[y]));
    }
  }
  return std::max(0.0, mi);
}

double nmi(const JointDistribution& joint, NmiNormalizer normalizer) {
  const auto marginal = normalizer == NmiNormalizer::ByX ? joint.marginal_x() : joint.marginal_y();
  const double h = entropy(marginal);
  if (h <= 1e-12) return 0.0;
  return std::clamp(mutual_information(joint) / h, 0.0, 1.0);
}

JointDistribution PairTable::joint() const {
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(samples);
  }
  return JointDistribution(nx, ny, std::move(p));
}

PairTable pair_table(const SymbolicDatabase& db, std::size_t series_x, std::size_t series_y,
                     std::size_t window_samples) {
  if (series_x >= db.series.size() || series_y >= db.series.size()) {
    throw std::out_of_range("series index out of range");
  }
  const auto& xs = db.series[series_x];
  const auto& ys = db.series[series_y];
  if (xs.codes.size() != ys.codes.size()) throw std::invalid_argument("misaligned series lengths");
  if (xs.codes.empty()) throw std::invalid_argument("empty series");
  if (window_samples == 0) throw std::invalid_argument("window must hold at least one sample");
  PairTable t;
  t.series_x = series_x;
  t.series_y = series_y;
  t.nx = xs.alphabet.size();
  t.ny = ys.alphabet.size();
  t.samples = xs.codes.size();
  t.window_samples = window_samples;
  t.counts.assign(t.nx * t.ny, 0);
  t.windows_with_cell.assign(t.nx * t.ny, 0);
  t.weighted_windows.assign(t.nx * t.ny, 0);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> last_window(t.nx * t.ny, kNone);
  for (std::size_t i = 0; i < t.samples; ++i) {
    const std::size_t c = xs.codes[i] * t.ny + ys.codes[i];
    const std::size_t w = i / window_samples;
    ++t.counts[c];
    if (last_window[c] != w) {
      last_window[c] = w;
      ++t.windows_with_cell[c];
      t.weighted_windows[c] += std::min(window_samples, t.samples - w * window_samples);
    }
  }
  return t;
}

PairStats pair_statistics(const PairTable& table, std::uint32_t target_x, std::uint32_t target_y) {
  if (target_x >= table.nx || target_y >= table.ny) {
    throw std::out_of_range("target symbol outside the alphabet");
  }
  PairStats s;
  s.series_x = table.series_x;
  s.series_y = table.series_y;
  s.target_x = target_x;
  s.target_y = target_y;
  s.joint = table.joint();
  s.px = s.joint.marginal_x();
  s.py = s.joint.marginal_y();
  s.nmi_xy = nmi(s.joint, NmiNormalizer::ByX);
  s.nmi_yx = nmi(s.joint, NmiNormalizer::ByY);
  s.n_x = table.nx;
  s.p_target = s.joint.at(target_x, target_y);
  s.lambda2 = s.py[target_y];

  s.lambda1 = std::numeric_limits<double>::infinity();
  s.lambda5 = 0.0;
  for (double v : s.px) {
    if (v > 0.0) s.lambda1 = std::min(s.lambda1, v);
    s.lambda5 = std::max(s.lambda5, v);
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < table.nx; ++x) {
    for (std::size_t y = 0; y < table.ny; ++y) {
      if (x == target_x && y == target_y) continue;
      const double pxy = s.joint.at(x, y);
      if (pxy <= 0.0) continue;
      const double cond = pxy / s.py[y];
      if (cond < best) {
        best = cond;
        s.lambda3 = pxy;
        s.lambda4 = cond;
        s.lambda34_defined = true;
      }
    }
  }

  s.samples = table.samples;
  const std::size_t cell = target_x * table.ny + target_y;
  s.cooccur_samples = table.counts[cell];
  s.windows_with_target = table.windows_with_cell[cell];
  s.weighted_windows = table.weighted_windows[cell];
  s.vartheta_count = s.weighted_windows - s.cooccur_samples;
  s.vartheta = static_cast<double>(s.vartheta_count) / static_cast<double>(s.samples);
  return s;
}

PairStats pair_statistics(const SymbolicDatabase& db, std::size_t series_x, std::size_t series_y,
                          std::uint32_t target_x, std::uint32_t target_y,
                          std::size_t window_samples) {
  return pair_statistics(pair_table(db, series_x, series_y, window_samples), target_x, target_y);
}

}  // namespace tempo
