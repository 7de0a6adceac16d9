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

#include "tempo/relation.hpp"

#include <algorithm>

namespace tempo {

std::optional<RelationKind> classify_relation(const Interval& earlier, const Interval& later,
                                              Duration epsilon, Duration min_overlap) noexcept {
  const Tick si = earlier.start(), ei = earlier.end();
  const Tick sj = later.start(), ej = later.end();
  if (si <= sj && ej <= ei + epsilon) return RelationKind::Contains;
  if (si < sj && ej > ei + epsilon && ei - sj >= min_overlap - epsilon) {
    return RelationKind::Overlaps;
  }
  if (sj >= ei - epsilon) return RelationKind::Follows;
  return std::nullopt;
}

namespace {

class WitnessSearch {
 public:
  WitnessSearch(const TemporalSequence& sequence, const TemporalPattern& pattern,
                std::span<const std::span<const std::uint32_t>> candidates,
                const MiningConfig& config, std::uint64_t* checks)
      : seq_(sequence), pattern_(pattern), candidates_(candidates), config_(config),
        checks_(checks), witness_(pattern.size()) {}

  std::optional<Witness> run() {
    if (assign(0, 0)) return witness_;
    return std::nullopt;
  }

 private:
  bool assign(std::size_t slot, Tick max_end) {
    if (slot == pattern_.size()) return true;
    const auto& cands = candidates_[slot];
    auto it = cands.begin();
    if (slot > 0) it = std::upper_bound(cands.begin(), cands.end(), witness_[slot - 1]);
    for (; it != cands.end(); ++it) {
      const auto& inst = seq_.instances[*it];
      Tick new_max = inst.interval.end();
      if (slot > 0) {
        const Tick first_start = seq_.instances[witness_[0]].interval.start();
        // Starts are non-decreasing along the sequence, so no later candidate fits either.
        if (inst.interval.start() - first_start > config_.t_max) break;
        new_max = std::max(max_end, new_max);
        if (new_max - first_start > config_.t_max) continue;
      } else if (inst.interval.length() > config_.t_max) {
        continue;
      }
      bool ok = true;
      for (std::size_t prev = 0; prev < slot && ok; ++prev) {
        if (checks_) ++*checks_;
        auto rel = classify_relation(seq_.instances[witness_[prev]], inst, config_.epsilon,
                                     config_.min_overlap);
        ok = rel && *rel == pattern_.relation(prev, slot);
      }
      if (!ok) continue;
      witness_[slot] = *it;
      if (assign(slot + 1, new_max)) return true;
    }
    return false;
  }

  const TemporalSequence& seq_;
  const TemporalPattern& pattern_;
  std::span<const std::span<const std::uint32_t>> candidates_;
  const MiningConfig& config_;
  std::uint64_t* checks_;
  Witness witness_;
};

}  // namespace

std::optional<Witness> find_witness(const TemporalSequence& sequence, const TemporalPattern& pattern,
                                    std::span<const std::span<const std::uint32_t>> candidates,
                                    const MiningConfig& config, std::uint64_t* relation_checks) {
  if (pattern.size() < 2) throw std::invalid_argument("pattern must have at least two events");
  if (candidates.size() != pattern.size()) {
    throw std::invalid_argument("one candidate list per slot required");
  }
  return WitnessSearch(sequence, pattern, candidates, config, relation_checks).run();
}

std::optional<Witness> find_witness(const TemporalSequence& sequence, const TemporalPattern& pattern,
                                    const MiningConfig& config, std::uint64_t* relation_checks) {
  if (pattern.size() < 2) throw std::invalid_argument("pattern must have at least two events");
  std::vector<std::vector<std::uint32_t>> lists(pattern.size());
  for (std::uint32_t idx = 0; idx < sequence.instances.size(); ++idx) {
    for (std::size_t slot = 0; slot < pattern.size(); ++slot) {
      if (pattern.events()[slot] == sequence.instances[idx].event) lists[slot].push_back(idx);
    }
  }
  std::vector<std::span<const std::uint32_t>> views(lists.begin(), lists.end());
  return find_witness(sequence, pattern, views, config, relation_checks);
}

bool witness_valid(const TemporalSequence& sequence, const TemporalPattern& pattern,
                   const Witness& witness, const MiningConfig& config) {
  if (witness.size() != pattern.size()) return false;
  Tick max_end = 0;
  for (std::size_t s = 0; s < witness.size(); ++s) {
    if (witness[s] >= sequence.instances.size()) return false;
    if (s > 0 && witness[s] <= witness[s - 1]) return false;
    const auto& inst = sequence.instances[witness[s]];
    if (inst.event != pattern.events()[s]) return false;
    max_end = s == 0 ? inst.interval.end() : std::max(max_end, inst.interval.end());
    for (std::size_t prev = 0; prev < s; ++prev) {
      auto rel = classify_relation(sequence.instances[witness[prev]], inst, config.epsilon,
                                   config.min_overlap);
      if (!rel || *rel != pattern.relation(prev, s)) return false;
    }
  }
  return max_end - sequence.instances[witness[0]].interval.start() <= config.t_max;
}

}  // namespace tempo
