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

#include "tempo/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tempo/relation.hpp"

namespace tempo {

std::vector<PatternResult> brute_force_mine(const SequenceDatabase& db, const MiningConfig& config,
                                            const OracleLimits& limits) {
  config.validate();
  std::vector<PatternResult> out;
  if (db.empty()) return out;

  std::set<EventId> present;
  for (const auto& seq : db.sequences) {
    for (const auto& inst : seq.instances) present.insert(inst.event);
  }
  if (present.size() > limits.max_events || db.size() > limits.max_sequences ||
      config.max_pattern_len > limits.max_length) {
    throw std::invalid_argument("instance too large for exhaustive enumeration");
  }
  const std::vector<EventId> events(present.begin(), present.end());

  std::vector<std::size_t> event_support(db.catalog.size(), 0);
  for (const auto& seq : db.sequences) {
    std::set<EventId> seen;
    for (const auto& inst : seq.instances) seen.insert(inst.event);
    for (auto e : seen) ++event_support[e];
  }
  const auto thresholds = CountThresholds::from(config, db.size());

  for (std::size_t len = 2; len <= config.max_pattern_len; ++len) {
    const std::size_t relations = len * (len - 1) / 2;
    std::size_t event_combos = 1, relation_combos = 1;
    for (std::size_t i = 0; i < len; ++i) event_combos *= events.size();
    for (std::size_t i = 0; i < relations; ++i) relation_combos *= 3;

    for (std::size_t ec = 0; ec < event_combos; ++ec) {
      std::vector<EventId> slots(len);
      std::size_t v = ec;
      for (std::size_t i = 0; i < len; ++i) {
        slots[i] = events[v % events.size()];
        v /= events.size();
      }
      std::size_t denom = 0;
      for (auto e : slots) denom = std::max(denom, event_support[e]);

      for (std::size_t rc = 0; rc < relation_combos; ++rc) {
        std::vector<RelationKind> rel(relations);
        std::size_t r = rc;
        for (std::size_t i = 0; i < relations; ++i) {
          rel[i] = static_cast<RelationKind>(r % 3);
          r /= 3;
        }
        TemporalPattern pattern(slots, rel);
        PatternResult res;
        for (std::uint32_t s = 0; s < db.size(); ++s) {
          if (auto w = find_witness(db.sequences[s], pattern, config)) {
            res.sequences.push_back(s);
            res.witnesses.push_back(std::move(*w));
          }
        }
        const std::size_t support = res.sequences.size();
        if (!thresholds.frequent(support) || !thresholds.within_max(support) ||
            !thresholds.confident(support, denom)) {
          continue;
        }
        res.pattern = std::move(pattern);
        res.support = support;
        res.relative_support = static_cast<double>(support) / static_cast<double>(db.size());
        res.confidence = static_cast<double>(support) / static_cast<double>(denom);
        out.push_back(std::move(res));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PatternResult& a, const PatternResult& b) {
    if (a.pattern.size() != b.pattern.size()) return a.pattern.size() < b.pattern.size();
    return a.pattern < b.pattern;
  });
  return out;
}

}  // namespace tempo
