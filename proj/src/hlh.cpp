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

#include "tempo/hlh.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tempo {

void Hlh1::insert(EventId event, EventPostings postings) {
  if (postings.sequences.size() != postings.instances.size()) {
    throw std::logic_error("event postings misaligned");
  }
  eh_[event] = std::move(postings);
}

const EventPostings* Hlh1::find(EventId event) const {
  auto it = eh_.find(event);
  return it == eh_.end() ? nullptr : &it->second;
}

std::size_t Hlh1::support(EventId event) const {
  const auto* p = find(event);
  return p ? p->sequences.size() : 0;
}

std::span<const std::uint32_t> Hlh1::instances(EventId event, std::uint32_t seq) const {
  const auto* p = find(event);
  if (!p) return {};
  auto it = std::lower_bound(p->sequences.begin(), p->sequences.end(), seq);
  if (it == p->sequences.end() || *it != seq) return {};
  return p->instances[static_cast<std::size_t>(it - p->sequences.begin())];
}

Hlh1 build_hlh1(const SequenceDatabase& db, std::size_t min_count,
                const std::vector<bool>* allowed_events) {
  if (db.empty()) throw std::invalid_argument("cannot index an empty sequence database");
  std::vector<EventPostings> all(db.catalog.size());
  for (std::uint32_t s = 0; s < db.sequences.size(); ++s) {
    const auto& seq = db.sequences[s];
    for (std::uint32_t i = 0; i < seq.instances.size(); ++i) {
      auto& post = all[seq.instances[i].event];
      if (post.sequences.empty() || post.sequences.back() != s) {
        post.sequences.push_back(s);
        post.instances.emplace_back();
      }
      post.instances.back().push_back(i);
    }
  }
  Hlh1 h;
  for (EventId e = 0; e < all.size(); ++e) {
    if (allowed_events && !(*allowed_events)[e]) continue;
    if (!all[e].sequences.empty() && all[e].sequences.size() >= min_count) {
      h.insert(e, std::move(all[e]));
    }
  }
  return h;
}

Hlh1 build_hlh1(const SequenceDatabase& db, double sigma_min) {
  MiningConfig cfg;
  cfg.sigma_min = sigma_min;
  return build_hlh1(db, CountThresholds::from(cfg, db.size()).min_count);
}

SequenceIds intersect(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  SequenceIds out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Intersection intersect_sequences(const Hlh1& h, std::span<const EventId> events) {
  Intersection out;
  if (events.empty()) return out;
  std::set<EventId> distinct(events.begin(), events.end());
  bool first = true;
  for (auto e : distinct) {
    const auto* p = h.find(e);
    if (!p) {
      out.ids.clear();
      out.missing = true;
      return out;
    }
    out.ids = first ? p->sequences : intersect(out.ids, p->sequences);
    first = false;
  }
  return out;
}

Intersection group_sequences(const Hlh1& h, std::span<const EventId> group) {
  Intersection out = intersect_sequences(h, group);
  if (out.missing) return out;
  std::map<EventId, std::size_t> need;
  for (auto e : group) ++need[e];
  if (std::all_of(need.begin(), need.end(), [](const auto& kv) { return kv.second == 1; })) {
    return out;
  }
  SequenceIds kept;
  for (auto s : out.ids) {
    bool ok = true;
    for (const auto& [e, m] : need) {
      if (m > 1 && h.instances(e, s).size() < m) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(s);
  }
  out.ids = std::move(kept);
  return out;
}

void HlhK::add_group(const GroupKey& group, SequenceIds sequences) {
  if (group.size() != k_) throw std::logic_error("group size does not match the level");
  if (!std::is_sorted(group.begin(), group.end())) throw std::logic_error("group key unsorted");
  auto [it, inserted] = eh_.try_emplace(group);
  if (inserted) {
    it->second.sequences = std::move(sequences);
  } else if (it->second.sequences != sequences) {
    throw std::logic_error("group re-added with a different sequence list");
  }
}

void HlhK::insert_pattern(const GroupKey& group, const TemporalPattern& pattern,
                          SequenceIds sequences, std::vector<Witness> witnesses) {
  auto git = eh_.find(group);
  if (git == eh_.end()) throw std::logic_error("pattern inserted into an unknown group");
  if (pattern.size() != k_ || pattern.group() != group) {
    throw std::logic_error("pattern does not belong to its group");
  }
  if (sequences.size() != witnesses.size()) {
    throw std::logic_error("one witness per supporting sequence required");
  }
  auto pit = ph_.find(pattern);
  if (pit != ph_.end()) {
    if (pit->second != sequences || sh_.at(pattern) != witnesses) {
      throw std::logic_error("conflicting payload for stored pattern " + pattern.key());
    }
    return;
  }
  ph_.emplace(pattern, std::move(sequences));
  sh_.emplace(pattern, std::move(witnesses));
  git->second.patterns.push_back(pattern);
}

const GroupEntry* HlhK::group(const GroupKey& key) const {
  auto it = eh_.find(key);
  return it == eh_.end() ? nullptr : &it->second;
}

const SequenceIds* HlhK::pattern_sequences(const TemporalPattern& pattern) const {
  auto it = ph_.find(pattern);
  return it == ph_.end() ? nullptr : &it->second;
}

const std::vector<Witness>* HlhK::witnesses(const TemporalPattern& pattern) const {
  auto it = sh_.find(pattern);
  return it == sh_.end() ? nullptr : &it->second;
}

const Witness* HlhK::witness(const TemporalPattern& pattern, std::uint32_t seq) const {
  const auto* seqs = pattern_sequences(pattern);
  if (!seqs) return nullptr;
  auto it = std::lower_bound(seqs->begin(), seqs->end(), seq);
  if (it == seqs->end() || *it != seq) return nullptr;
  return &sh_.at(pattern)[static_cast<std::size_t>(it - seqs->begin())];
}

std::vector<EventId> HlhK::distinct_events() const {
  std::set<EventId> events;
  for (const auto& [key, entry] : eh_) {
    if (!entry.patterns.empty()) events.insert(key.begin(), key.end());
  }
  return {events.begin(), events.end()};
}

void HlhK::drop_empty_groups() {
  std::erase_if(eh_, [](const auto& kv) { return kv.second.patterns.empty(); });
}

void HlhK::audit(const Hlh1& h1, const CountThresholds& thresholds) const {
  auto fail = [](const std::string& what) { throw std::logic_error("HLH audit: " + what); };
  std::size_t listed = 0;
  for (const auto& [key, entry] : eh_) {
    if (key.size() != k_) fail("group of wrong size");
    if (!std::is_sorted(entry.sequences.begin(), entry.sequences.end())) {
      fail("group sequences not ascending");
    }
    for (const auto& p : entry.patterns) {
      ++listed;
      if (p.group() != key) fail("pattern listed under a foreign group");
      auto pit = ph_.find(p);
      if (pit == ph_.end()) fail("listed pattern missing from the pattern table");
      const auto& seqs = pit->second;
      if (!std::is_sorted(seqs.begin(), seqs.end()) ||
          std::adjacent_find(seqs.begin(), seqs.end()) != seqs.end()) {
        fail("pattern sequences not strictly ascending");
      }
      if (!std::includes(entry.sequences.begin(), entry.sequences.end(), seqs.begin(),
                         seqs.end())) {
        fail("pattern sequences not within its group's sequences");
      }
      auto sit = sh_.find(p);
      if (sit == sh_.end() || sit->second.size() != seqs.size()) {
        fail("witness table misaligned for " + p.key());
      }
      std::size_t max_support = 0;
      for (auto e : p.events()) max_support = std::max(max_support, h1.support(e));
      if (!thresholds.frequent(seqs.size())) fail("stored pattern below minimum support");
      if (!thresholds.confident(seqs.size(), max_support)) {
        fail("stored pattern below minimum confidence");
      }
    }
  }
  if (listed != ph_.size() || listed != sh_.size()) fail("pattern table and group lists disagree");
}

Intersection intersect_sequences(const HlhK& h, const GroupKey& group) {
  Intersection out;
  if (const auto* entry = h.group(group)) {
    out.ids = entry->sequences;
  } else {
    out.missing = true;
  }
  return out;
}

}  // namespace tempo
