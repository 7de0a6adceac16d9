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

#include "tempo/miner.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <thread>
#include <unordered_map>

#include "tempo/information.hpp"
#include "tempo/relation.hpp"

namespace tempo {

LevelCounters& LevelCounters::operator+=(const LevelCounters& o) {
  groups_generated += o.groups_generated;
  groups_pruned_apriori += o.groups_pruned_apriori;
  groups_evaluated += o.groups_evaluated;
  patterns_generated += o.patterns_generated;
  patterns_pruned_transitivity += o.patterns_pruned_transitivity;
  patterns_verified += o.patterns_verified;
  patterns_accepted += o.patterns_accepted;
  patterns_rejected += o.patterns_rejected;
  relation_checks += o.relation_checks;
  return *this;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Runs body(item, worker) for item in [0, n) on `threads` workers; each
/// worker takes a strided slice so per-item outputs can be merged in order.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) body(i, w);
    });
  }
  for (auto& t : pool) t.join();
}

std::size_t max_support(const Hlh1& h1, std::span<const EventId> events) {
  std::size_t best = 0;
  for (auto e : events) best = std::max(best, h1.support(e));
  return best;
}

struct Accepted {
  GroupKey group;
  TemporalPattern pattern;
  SequenceIds sequences;
  std::vector<Witness> witnesses;
};

std::uint64_t pair_code(EventId a, EventId b, RelationKind r) {
  return (static_cast<std::uint64_t>(a) << 34) | (static_cast<std::uint64_t>(b) << 2) |
         static_cast<std::uint64_t>(r);
}

}  // namespace

HlhK mine_pairs(const Hlh1& h1, const SequenceDatabase& db, const MiningConfig& config,
                LevelCounters& counters, const MinerOptions& options, const SeriesFilter* filter) {
  const auto thresholds = CountThresholds::from(config, db.size());
  const bool apriori = uses_apriori(config.pruning);
  std::vector<EventId> events;
  for (const auto& [e, post] : h1.events()) events.push_back(e);

  const std::size_t workers = std::max<std::size_t>(1, options.threads);
  std::vector<LevelCounters> local(workers);
  std::vector<std::vector<Accepted>> results(events.size());

  parallel_for(events.size(), workers, [&](std::size_t ai, std::size_t w) {
    auto& c = local[w];
    const EventId a = events[ai];
    for (std::size_t bi = ai; bi < events.size(); ++bi) {
      const EventId b = events[bi];
      if (filter && !filter->pair_allowed(a, b)) continue;
      ++c.groups_generated;
      const GroupKey group{a, b};
      const auto seqs = group_sequences(h1, group).ids;
      const std::size_t denom = std::max(h1.support(a), h1.support(b));
      if (apriori && (!thresholds.frequent(seqs.size()) ||
                      !thresholds.confident(seqs.size(), denom))) {
        ++c.groups_pruned_apriori;
        continue;
      }
      ++c.groups_evaluated;

      // Slot = (first event is a ? 0 : 1) * 3 + relation.
      std::array<SequenceIds, 6> slot_seqs;
      std::array<std::vector<Witness>, 6> slot_wit;
      auto record = [&](std::uint32_t s, std::uint32_t lo, std::uint32_t hi) {
        const auto& seq = db.sequences[s];
        const auto& x = seq.instances[lo];
        const auto& y = seq.instances[hi];
        if (std::max(x.interval.end(), y.interval.end()) - x.interval.start() > config.t_max) {
          return;
        }
        ++c.relation_checks;
        auto rel = classify_relation(x, y, config.epsilon, config.min_overlap);
        if (!rel) return;
        const std::size_t slot = (x.event == a ? 0 : 3) + static_cast<std::size_t>(*rel);
        if (slot_seqs[slot].empty() || slot_seqs[slot].back() != s) {
          slot_seqs[slot].push_back(s);
          slot_wit[slot].push_back({lo, hi});
        }
      };
      for (auto s : seqs) {
        const auto ia = h1.instances(a, s);
        if (a == b) {
          for (std::size_t i = 0; i < ia.size(); ++i) {
            for (std::size_t j = i + 1; j < ia.size(); ++j) record(s, ia[i], ia[j]);
          }
        } else {
          const auto ib = h1.instances(b, s);
          for (auto x : ia) {
            for (auto y : ib) record(s, std::min(x, y), std::max(x, y));
          }
        }
      }
      for (std::size_t slot = 0; slot < 6; ++slot) {
        if (slot_seqs[slot].empty()) continue;
        ++c.patterns_generated;
        ++c.patterns_verified;
        const std::size_t support = slot_seqs[slot].size();
        if (!thresholds.frequent(support) || !thresholds.confident(support, denom)) {
          ++c.patterns_rejected;
          continue;
        }
        ++c.patterns_accepted;
        const EventId first = slot < 3 ? a : b;
        const EventId second = slot < 3 ? b : a;
        TemporalPattern p({first, second}, {static_cast<RelationKind>(slot % 3)});
        results[ai].push_back(
            {group, std::move(p), std::move(slot_seqs[slot]), std::move(slot_wit[slot])});
      }
    }
  });

  HlhK h2(2);
  for (auto& c : local) counters += c;
  for (auto& bucket : results) {
    for (auto& acc : bucket) {
      if (!h2.group(acc.group)) h2.add_group(acc.group, group_sequences(h1, acc.group).ids);
      h2.insert_pattern(acc.group, acc.pattern, std::move(acc.sequences),
                        std::move(acc.witnesses));
    }
  }
  return h2;
}

HlhK mine_k(const HlhK& previous, const Hlh1& h1, const HlhK& h2, const SequenceDatabase& db,
            const MiningConfig& config, std::size_t k, LevelCounters& counters,
            const MinerOptions& options, const SeriesFilter* filter) {
  if (k < 3 || previous.k() + 1 != k) throw std::invalid_argument("mine_k needs level k-1 input");
  const auto thresholds = CountThresholds::from(config, db.size());
  const bool apriori = uses_apriori(config.pruning);
  const bool transitivity = uses_transitivity(config.pruning);

  // Extension events: every frequent single event, or with transitivity only
  // those still present at level k-1.
  std::vector<EventId> extension;
  if (transitivity) {
    for (auto e : previous.distinct_events()) {
      if (h1.contains(e)) extension.push_back(e);
    }
  } else {
    for (const auto& [e, post] : h1.events()) extension.push_back(e);
  }

  std::unordered_map<std::uint64_t, const SequenceIds*> pair_index;
  if (transitivity) {
    for (const auto& [key, entry] : h2.groups()) {
      for (const auto& p : entry.patterns) {
        pair_index.emplace(pair_code(p.events()[0], p.events()[1], p.relation(0, 1)),
                           h2.pattern_sequences(p));
      }
    }
  }

  struct Item {
    const GroupKey* base;
    const GroupEntry* entry;
    EventId event;
    GroupKey group;
  };
  std::vector<Item> items;
  for (const auto& [key, entry] : previous.groups()) {
    if (entry.patterns.empty()) continue;
    for (auto e : extension) {
      if (filter && !filter->event_allowed(e)) continue;
      GroupKey g = key;
      g.insert(std::upper_bound(g.begin(), g.end(), e), e);
      items.push_back({&key, &entry, e, std::move(g)});
    }
  }

  // Group-level filter, evaluated once per distinct k-group.
  std::map<GroupKey, bool> group_ok;
  if (apriori) {
    for (const auto& it : items) {
      auto [pos, inserted] = group_ok.try_emplace(it.group, false);
      if (!inserted) continue;
      const auto seqs = group_sequences(h1, it.group).ids;
      pos->second = thresholds.frequent(seqs.size()) &&
                    thresholds.confident(seqs.size(), max_support(h1, it.group));
    }
  }

  std::uint64_t assignments = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) assignments *= 3;

  const std::size_t workers = std::max<std::size_t>(1, options.threads);
  std::vector<LevelCounters> local(workers);
  std::vector<std::vector<Accepted>> results(items.size());

  parallel_for(items.size(), workers, [&](std::size_t idx, std::size_t w) {
    auto& c = local[w];
    const auto& item = items[idx];
    const EventId e = item.event;
    if (filter) {
      for (auto b : *item.base) {
        if (!filter->pair_allowed(b, e)) return;
      }
    }
    ++c.groups_generated;
    if (apriori && !group_ok.at(item.group)) {
      ++c.groups_pruned_apriori;
      return;
    }
    ++c.groups_evaluated;
    const std::size_t denom = std::max(max_support(h1, *item.base), h1.support(e));
    const auto* e_post = h1.find(e);

    auto verify = [&](const TemporalPattern& p, const SequenceIds& candidates) {
      ++c.patterns_verified;
      SequenceIds seqs;
      std::vector<Witness> wits;
      std::vector<std::span<const std::uint32_t>> lists(p.size());
      for (std::size_t pos = 0; pos < candidates.size(); ++pos) {
        if (seqs.size() + (candidates.size() - pos) < thresholds.min_count) break;
        const auto s = candidates[pos];
        for (std::size_t slot = 0; slot < p.size(); ++slot) {
          lists[slot] = h1.instances(p.events()[slot], s);
        }
        if (auto wit = find_witness(db.sequences[s], p, lists, config, &c.relation_checks)) {
          seqs.push_back(s);
          wits.push_back(std::move(*wit));
        }
      }
      if (!thresholds.frequent(seqs.size()) || !thresholds.confident(seqs.size(), denom)) {
        ++c.patterns_rejected;
        return;
      }
      ++c.patterns_accepted;
      results[idx].push_back({item.group, p, std::move(seqs), std::move(wits)});
    };

    std::vector<RelationKind> rel(k - 1);
    for (const auto& base : item.entry->patterns) {
      const auto& base_seqs = *previous.pattern_sequences(base);
      c.patterns_generated += assignments;
      if (transitivity) {
        std::uint64_t verified_before = c.patterns_verified;
        // Choose relations from the last existing slot back to the first,
        // narrowing the candidate sequences with each stored 2-event pattern.
        std::function<void(std::ptrdiff_t, const SequenceIds&)> descend =
            [&](std::ptrdiff_t i, const SequenceIds& cur) {
              if (i < 0) {
                verify(base.extended(e, rel), cur);
                return;
              }
              for (auto r : kRelations) {
                auto hit = pair_index.find(pair_code(base.events()[i], e, r));
                if (hit == pair_index.end()) continue;
                auto next = intersect(cur, *hit->second);
                if (!thresholds.frequent(next.size()) || !thresholds.confident(next.size(), denom)) {
                  continue;
                }
                rel[static_cast<std::size_t>(i)] = r;
                descend(i - 1, next);
              }
            };
        descend(static_cast<std::ptrdiff_t>(k) - 2, base_seqs);
        c.patterns_pruned_transitivity += assignments - (c.patterns_verified - verified_before);
      } else {
        const auto candidates = intersect(base_seqs, e_post->sequences);
        for (std::uint64_t code = 0; code < assignments; ++code) {
          std::uint64_t v = code;
          for (std::size_t i = 0; i + 1 < k; ++i) {
            rel[i] = static_cast<RelationKind>(v % 3);
            v /= 3;
          }
          verify(base.extended(e, rel), candidates);
        }
      }
    }
  });

  HlhK hk(k);
  for (auto& c : local) counters += c;
  std::map<GroupKey, SequenceIds> group_cache;
  for (auto& bucket : results) {
    for (auto& acc : bucket) {
      if (!hk.group(acc.group)) hk.add_group(acc.group, group_sequences(h1, acc.group).ids);
      hk.insert_pattern(acc.group, acc.pattern, std::move(acc.sequences),
                        std::move(acc.witnesses));
    }
  }
  return hk;
}

namespace {

void collect(const HlhK& level, const Hlh1& h1, const CountThresholds& thresholds, std::size_t n,
             std::vector<PatternResult>& out) {
  for (const auto& [key, entry] : level.groups()) {
    for (const auto& p : entry.patterns) {
      const auto& seqs = *level.pattern_sequences(p);
      if (!thresholds.within_max(seqs.size())) continue;
      PatternResult r;
      r.pattern = p;
      r.support = seqs.size();
      r.relative_support = static_cast<double>(r.support) / static_cast<double>(n);
      r.confidence = static_cast<double>(r.support) /
                     static_cast<double>(max_support(h1, p.events()));
      r.sequences = seqs;
      r.witnesses = *level.witnesses(p);
      out.push_back(std::move(r));
    }
  }
}

MiningReport run(const SequenceDatabase& db, const MiningConfig& config,
                 const MinerOptions& options, const SeriesFilter* filter) {
  config.validate();
  const auto t0 = Clock::now();
  MiningReport report;
  report.config = config;
  report.sequence_count = db.size();
  if (db.empty()) return report;

  const auto thresholds = CountThresholds::from(config, db.size());
  std::vector<bool> allowed;
  if (filter) {
    allowed.resize(db.catalog.size());
    for (EventId e = 0; e < allowed.size(); ++e) allowed[e] = filter->event_allowed(e);
  }
  const Hlh1 h1 = build_hlh1(db, thresholds.min_count, filter ? &allowed : nullptr);
  for (const auto& [e, post] : h1.events()) {
    report.single_events.push_back(
        {e, post.sequences.size(),
         static_cast<double>(post.sequences.size()) / static_cast<double>(db.size())});
  }

  LevelCounters c2;
  c2.k = 2;
  HlhK h2 = mine_pairs(h1, db, config, c2, options, filter);
  if (options.audit) h2.audit(h1, thresholds);
  report.levels.push_back(c2);
  report.candidates_verified += c2.groups_evaluated;
  collect(h2, h1, thresholds, db.size(), report.patterns);
  report.peak_live_patterns = h2.pattern_count();

  const HlhK* previous = &h2;
  HlhK current;
  for (std::size_t k = 3; k <= config.max_pattern_len && !previous->empty(); ++k) {
    LevelCounters ck;
    ck.k = k;
    HlhK next = mine_k(*previous, h1, h2, db, config, k, ck, options, filter);
    if (options.audit) next.audit(h1, thresholds);
    report.levels.push_back(ck);
    report.candidates_verified += ck.patterns_verified;
    collect(next, h1, thresholds, db.size(), report.patterns);
    const std::size_t live =
        h2.pattern_count() + (k > 3 ? previous->pattern_count() : 0) + next.pattern_count();
    report.peak_live_patterns = std::max(report.peak_live_patterns, live);
    current = std::move(next);
    previous = &current;
  }

  for (const auto& c : report.levels) report.totals += c;
  std::sort(report.patterns.begin(), report.patterns.end(),
            [](const PatternResult& a, const PatternResult& b) {
              if (a.pattern.size() != b.pattern.size()) return a.pattern.size() < b.pattern.size();
              return a.pattern < b.pattern;
            });
  report.mining_seconds = seconds_since(t0);
  return report;
}

}  // namespace

MiningReport mine(const SequenceDatabase& db, const MiningConfig& config,
                  const MinerOptions& options) {
  return run(db, config, options, nullptr);
}

std::set<std::string> MiningReport::pattern_keys() const {
  std::set<std::string> keys;
  for (const auto& p : patterns) keys.insert(p.pattern.key());
  return keys;
}

std::size_t MiningReport::count_of_length(std::size_t k) const {
  return static_cast<std::size_t>(std::count_if(
      patterns.begin(), patterns.end(), [k](const PatternResult& p) { return p.pattern.size() == k; }));
}

double ApproximationLog::pruned_series_fraction() const {
  if (series_kept.empty()) return 0.0;
  const auto pruned = std::count(series_kept.begin(), series_kept.end(), false);
  return static_cast<double>(pruned) / static_cast<double>(series_kept.size());
}

double ApproximationLog::pruned_pair_fraction() const {
  if (pairs.empty()) return 0.0;
  const auto pruned =
      std::count_if(pairs.begin(), pairs.end(), [](const auto& d) { return !d.kept; });
  return static_cast<double>(pruned) / static_cast<double>(pairs.size());
}

bool ApproximationLog::pair_kept(std::size_t x, std::size_t y) const {
  if (x == y) return series_kept.at(x);
  return kept_matrix_.at(x).at(y);
}

ApproximationLog screen_series(const SymbolicDatabase& db, std::size_t window_samples,
                               const MiningConfig& config) {
  config.validate();
  db.validate();
  const auto t0 = Clock::now();
  ApproximationLog log;
  log.window_samples = std::max<std::size_t>(1, window_samples);
  const std::size_t n = db.series.size();
  for (const auto& s : db.series) log.series.push_back(s.id);
  log.series_kept.assign(n, n == 1);
  log.kept_matrix_.assign(n, std::vector<bool>(n, false));
  if (db.grid.length == 0) {
    log.series_kept.assign(n, true);
    return log;
  }

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      SeriesPairDecision d;
      d.x = x;
      d.y = y;
      const auto forward = pair_table(db, x, y, log.window_samples);
      const auto joint = forward.joint();
      d.nmi_xy = nmi(joint, NmiNormalizer::ByX);
      d.nmi_yx = nmi(joint, NmiNormalizer::ByY);
      const bool constant = entropy(joint.marginal_x()) <= 1e-12 ||
                            entropy(joint.marginal_y()) <= 1e-12;
      if (constant) {
        d.kept = false;
        d.reason = "constant series";
      } else {
        const auto backward = pair_table(db, y, x, log.window_samples);
        std::vector<PairStats> targets;
        for (const auto* table : {&forward, &backward}) {
          for (std::uint32_t tx = 0; tx < table->nx; ++tx) {
            for (std::uint32_t ty = 0; ty < table->ny; ++ty) {
              if (table->cell(tx, ty) > 0) targets.push_back(pair_statistics(*table, tx, ty));
            }
          }
        }
        d.thresholds = select_mu(config, targets);
        const double score = std::min(d.nmi_xy, d.nmi_yx);
        if (!d.thresholds.prunable) {
          d.kept = true;
          d.reason = "no usable bound";
        } else if (score < d.thresholds.mu_min - 1e-12) {
          d.kept = false;
          d.reason = "nmi below mu_min";
        } else if (config.mode == Mode::Rare && d.thresholds.mu_max &&
                   score > *d.thresholds.mu_max + 1e-12) {
          d.kept = false;
          d.reason = "nmi above mu_max";
        } else {
          d.kept = true;
          d.reason = "dependent";
        }
      }
      if (d.kept) {
        log.kept_matrix_[x][y] = log.kept_matrix_[y][x] = true;
        log.series_kept[x] = log.series_kept[y] = true;
      }
      log.pairs.push_back(std::move(d));
    }
  }
  log.mi_seconds = seconds_since(t0);
  return log;
}

SeriesFilter::SeriesFilter(const EventCatalog& catalog, const ApproximationLog& log) : log_(&log) {
  event_ok_.resize(catalog.size());
  series_of_.resize(catalog.size());
  for (EventId e = 0; e < catalog.size(); ++e) {
    const auto& name = catalog.type(e).series;
    auto it = std::find(log.series.begin(), log.series.end(), name);
    if (it == log.series.end()) throw std::invalid_argument("series '" + name + "' not screened");
    series_of_[e] = static_cast<std::size_t>(it - log.series.begin());
    event_ok_[e] = log.series_kept[series_of_[e]];
  }
}

bool SeriesFilter::pair_allowed(EventId a, EventId b) const {
  return event_ok_[a] && event_ok_[b] && log_->pair_kept(series_of_[a], series_of_[b]);
}

MiningReport mine_approximate(const SymbolicDatabase& symbolic, const SequenceDatabase& db,
                              const MiningConfig& config, const MinerOptions& options) {
  config.validate();
  const std::size_t window_samples =
      symbolic.grid.period > 0
          ? static_cast<std::size_t>(std::max<Duration>(1, db.window / symbolic.grid.period))
          : 1;
  auto log = screen_series(symbolic, window_samples, config);
  SeriesFilter filter(db.catalog, log);
  auto report = run(db, config, options, &filter);
  report.approximation = std::move(log);
  return report;
}

double accuracy(const MiningReport& approximate, const MiningReport& exact) {
  const auto exact_keys = exact.pattern_keys();
  if (exact_keys.empty()) return 1.0;
  const auto approx_keys = approximate.pattern_keys();
  std::size_t hit = 0;
  for (const auto& k : approx_keys) hit += exact_keys.count(k);
  return static_cast<double>(hit) / static_cast<double>(exact_keys.size());
}

}  // namespace tempo
