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

#include "tempo/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace tempo {

Interval::Interval(Tick start, Tick end) : start_(start), end_(end) {
  if (start >= end) {
    throw std::invalid_argument("interval [" + std::to_string(start) + ", " +
                                std::to_string(end) + "] has non-positive length");
  }
}

EventId EventCatalog::intern(std::string_view series, std::string_view symbol) {
  if (auto found = find(series, symbol)) return *found;
  const auto id = static_cast<EventId>(types_.size());
  EventType type{std::string(series), std::string(symbol)};
  auto series_it = std::find(series_.begin(), series_.end(), type.series);
  std::size_t series_idx = static_cast<std::size_t>(series_it - series_.begin());
  if (series_it == series_.end()) series_.push_back(type.series);
  index_.emplace(type, id);
  types_.push_back(std::move(type));
  series_of_.push_back(series_idx);
  return id;
}

std::optional<EventId> EventCatalog::find(std::string_view series,
                                          std::string_view symbol) const {
  auto it = index_.find(EventType{std::string(series), std::string(symbol)});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EventId EventCatalog::at(std::string_view series, std::string_view symbol) const {
  if (auto found = find(series, symbol)) return *found;
  throw std::out_of_range("unknown event " + std::string(series) + ":" + std::string(symbol));
}

const EventType& EventCatalog::type(EventId id) const {
  if (id >= types_.size()) throw std::out_of_range("unknown event id " + std::to_string(id));
  return types_[id];
}

std::string EventCatalog::label(EventId id) const {
  const auto& t = type(id);
  return t.series + ":" + t.symbol;
}

std::size_t EventCatalog::series_index(EventId id) const {
  if (id >= series_of_.size()) throw std::out_of_range("unknown event id " + std::to_string(id));
  return series_of_[id];
}

bool chronological_less(const EventInstance& a, const EventInstance& b) noexcept {
  if (a.interval.start() != b.interval.start()) return a.interval.start() < b.interval.start();
  if (a.interval.end() != b.interval.end()) return a.interval.end() > b.interval.end();
  return a.event < b.event;
}

TemporalSequence::TemporalSequence(std::size_t sequence_id, std::vector<EventInstance> items)
    : id(sequence_id), instances(std::move(items)) {
  std::sort(instances.begin(), instances.end(), chronological_less);
}

std::string_view to_string(RelationKind kind) noexcept {
  switch (kind) {
    case RelationKind::Follows: return "Follows";
    case RelationKind::Contains: return "Contains";
    case RelationKind::Overlaps: return "Overlaps";
  }
  return "?";
}

RelationKind parse_relation(std::string_view text) {
  for (auto kind : kRelations) {
    if (to_string(kind) == text) return kind;
  }
  throw std::invalid_argument("unknown relation '" + std::string(text) + "'");
}

namespace {

constexpr std::size_t pair_count(std::size_t k) noexcept { return k * (k - 1) / 2; }

}  // namespace

TemporalPattern::TemporalPattern(std::vector<EventId> events, std::vector<RelationKind> relations)
    : events_(std::move(events)), relations_(std::move(relations)) {
  if (events_.size() < 2) throw std::invalid_argument("a pattern needs at least two events");
  if (relations_.size() != pair_count(events_.size())) {
    throw std::invalid_argument("pattern of " + std::to_string(events_.size()) + " events needs " +
                                std::to_string(pair_count(events_.size())) + " relations");
  }
}

TemporalPattern TemporalPattern::from_triples(std::vector<EventId> events,
                                              std::span<const RelationTriple> triples) {
  const std::size_t k = events.size();
  if (k < 2) throw std::invalid_argument("a pattern needs at least two events");
  std::vector<RelationKind> relations(pair_count(k));
  std::vector<bool> seen(relations.size(), false);
  for (const auto& t : triples) {
    if (t.left_slot >= t.right_slot || t.right_slot >= k) {
      throw std::invalid_argument("triple slots must satisfy left < right < k");
    }
    const auto idx = relation_index(t.left_slot, t.right_slot);
    if (seen[idx]) throw std::invalid_argument("duplicate triple for a slot pair");
    seen[idx] = true;
    relations[idx] = t.relation;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::invalid_argument("triples do not cover every slot pair");
  }
  return TemporalPattern(std::move(events), std::move(relations));
}

RelationKind TemporalPattern::relation(std::size_t left, std::size_t right) const {
  if (left >= right || right >= events_.size()) {
    throw std::out_of_range("relation slots out of range");
  }
  return relations_[relation_index(left, right)];
}

std::vector<RelationTriple> TemporalPattern::triples() const {
  std::vector<RelationTriple> out;
  out.reserve(relations_.size());
  for (std::size_t j = 1; j < events_.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      out.push_back({relations_[relation_index(i, j)], static_cast<std::uint16_t>(i),
                     static_cast<std::uint16_t>(j)});
    }
  }
  return out;
}

TemporalPattern TemporalPattern::extended(EventId event,
                                          std::span<const RelationKind> with_previous) const {
  if (with_previous.size() != events_.size()) {
    throw std::invalid_argument("extension needs one relation per existing slot");
  }
  TemporalPattern out;
  out.events_ = events_;
  out.events_.push_back(event);
  out.relations_ = relations_;
  out.relations_.insert(out.relations_.end(), with_previous.begin(), with_previous.end());
  return out;
}

TemporalPattern TemporalPattern::sub_pattern(std::span<const std::size_t> slots) const {
  std::vector<EventId> events;
  std::vector<RelationKind> relations;
  for (std::size_t b = 0; b < slots.size(); ++b) {
    if (slots[b] >= events_.size() || (b > 0 && slots[b] <= slots[b - 1])) {
      throw std::invalid_argument("sub-pattern slots must be ascending and in range");
    }
    events.push_back(events_[slots[b]]);
    for (std::size_t a = 0; a < b; ++a) relations.push_back(relation(slots[a], slots[b]));
  }
  return TemporalPattern(std::move(events), std::move(relations));
}

std::vector<EventId> TemporalPattern::group() const {
  auto g = events_;
  std::sort(g.begin(), g.end());
  return g;
}

std::string TemporalPattern::key() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < events_.size(); ++i) out << (i ? "," : "") << events_[i];
  out << "|";
  for (auto r : relations_) out << static_cast<int>(r);
  return out.str();
}

std::string TemporalPattern::describe(const EventCatalog& catalog) const {
  std::ostringstream out;
  bool first = true;
  for (const auto& t : triples()) {
    out << (first ? "" : ", ") << to_string(t.relation) << "(" << catalog.label(events_[t.left_slot])
        << "#" << t.left_slot << ", " << catalog.label(events_[t.right_slot]) << "#"
        << t.right_slot << ")";
    first = false;
  }
  return out.str();
}

std::size_t PatternHash::operator()(const TemporalPattern& pattern) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 0x100000001b3ULL; };
  for (auto e : pattern.events()) mix(e);
  mix(0xffff);
  for (auto r : pattern.relations()) mix(static_cast<std::size_t>(r));
  return h;
}

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::Frequent ? "frequent" : "rare";
}

std::string_view to_string(Pruning pruning) noexcept {
  switch (pruning) {
    case Pruning::None: return "none";
    case Pruning::Apriori: return "apriori";
    case Pruning::Transitivity: return "transitivity";
    case Pruning::All: return "all";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "frequent") return Mode::Frequent;
  if (text == "rare") return Mode::Rare;
  throw ConfigError("mode must be 'frequent' or 'rare', got '" + std::string(text) + "'");
}

Pruning parse_pruning(std::string_view text) {
  for (auto p : {Pruning::None, Pruning::Apriori, Pruning::Transitivity, Pruning::All}) {
    if (to_string(p) == text) return p;
  }
  throw ConfigError("pruning must be none|apriori|transitivity|all, got '" + std::string(text) +
                    "'");
}

void MiningConfig::validate() const {
  auto unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (!unit(sigma_min)) throw ConfigError("sigma_min must lie in [0, 1]");
  if (!unit(delta)) throw ConfigError("delta must lie in [0, 1]");
  if (sigma_max) {
    if (!std::isfinite(*sigma_max) || *sigma_max <= 0.0 || *sigma_max > 1.0) {
      throw ConfigError("sigma_max must lie in (0, 1]");
    }
    if (sigma_min > *sigma_max) throw ConfigError("sigma_min must not exceed sigma_max");
  }
  if (epsilon < 0) throw ConfigError("epsilon must be non-negative");
  if (epsilon >= min_overlap) throw ConfigError("epsilon must be smaller than min_overlap (d_o)");
  if (t_max <= 0) throw ConfigError("t_max must be positive");
  if (max_pattern_len < 2) throw ConfigError("max_pattern_len must be at least 2");
}

CountThresholds CountThresholds::from(const MiningConfig& config, std::size_t sequences) {
  CountThresholds t;
  const double n = static_cast<double>(sequences);
  t.min_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(config.sigma_min * n - 1e-9)));
  if (auto smax = config.effective_sigma_max()) {
    t.max_count = static_cast<std::size_t>(std::floor(*smax * n + 1e-9));
  }
  t.delta = config.delta;
  return t;
}

bool CountThresholds::confident(std::size_t support, std::size_t max_event_support) const noexcept {
  if (max_event_support == 0) return false;
  return static_cast<double>(support) / static_cast<double>(max_event_support) >= delta - 1e-9;
}

}  // namespace tempo
