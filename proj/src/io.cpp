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

#include "tempo/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace tempo {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == sep && !quoted) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool parse_int(const std::string& text, long long& value) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == text.size();
}

bool parse_double(const std::string& text, double& value) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == text.size() && std::isfinite(value);
}

}  // namespace

Tick parse_timestamp(const std::string& raw) {
  const std::string text = trim(raw);
  long long v = 0;
  if (parse_int(text, v)) return v;
  const auto parts = split(text, ':');
  if (parts.size() == 2 || parts.size() == 3) {
    long long h = 0, m = 0, s = 0;
    if (parse_int(parts[0], h) && parse_int(parts[1], m) &&
        (parts.size() == 2 || parse_int(parts[2], s)) && h >= 0 && m >= 0 && m < 60 && s >= 0 &&
        s < 60) {
      return h * 3600 + m * 60 + s;
    }
  }
  throw IngestError("cannot parse timestamp '" + text + "'");
}

Duration parse_duration(const std::string& raw) {
  const std::string text = trim(raw);
  long long v = 0;
  if (parse_int(text, v)) {
    if (v < 0) throw ConfigError("durations must be non-negative: '" + text + "'");
    return v;
  }
  if (text.size() >= 2) {
    const char unit = text.back();
    long long scale = 0;
    switch (unit) {
      case 's': scale = 1; break;
      case 'm': scale = 60; break;
      case 'h': scale = 3600; break;
      case 'd': scale = 86400; break;
      default: break;
    }
    if (scale && parse_int(text.substr(0, text.size() - 1), v) && v >= 0) return v * scale;
  }
  throw ConfigError("cannot parse duration '" + text + "'");
}

WideTable read_wide_csv(std::istream& in) {
  WideTable t;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split(line, ',');
    if (!header) {
      if (cells.size() < 2 || cells[0] != "timestamp") {
        throw IngestError("header must be 'timestamp,<series>,...'", line_no);
      }
      t.series.assign(cells.begin() + 1, cells.end());
      for (const auto& s : t.series) {
        if (s.empty()) throw IngestError("empty series name in header", line_no);
        if (std::count(t.series.begin(), t.series.end(), s) > 1) {
          throw IngestError("duplicate series '" + s + "'", line_no);
        }
      }
      t.columns.resize(t.series.size());
      header = true;
      continue;
    }
    if (cells.size() != t.series.size() + 1) {
      throw IngestError("expected " + std::to_string(t.series.size() + 1) + " fields, found " +
                            std::to_string(cells.size()),
                        line_no);
    }
    try {
      t.timestamps.push_back(parse_timestamp(cells[0]));
    } catch (const IngestError& e) {
      throw IngestError(e.what(), line_no);
    }
    for (std::size_t c = 0; c < t.series.size(); ++c) {
      if (cells[c + 1].empty()) throw IngestError("missing value for '" + t.series[c] + "'", line_no);
      t.columns[c].push_back(cells[c + 1]);
    }
  }
  if (!header) throw IngestError("empty input: no header line");
  if (t.timestamps.empty()) throw IngestError("no data rows");
  for (std::size_t i = 1; i < t.timestamps.size(); ++i) {
    if (t.timestamps[i] <= t.timestamps[i - 1]) {
      throw IngestError("timestamps must be strictly increasing", i + 2);
    }
  }
  t.numeric.resize(t.series.size());
  for (std::size_t c = 0; c < t.series.size(); ++c) {
    double v = 0;
    t.numeric[c] = std::all_of(t.columns[c].begin(), t.columns[c].end(),
                               [&v](const std::string& s) { return parse_double(s, v); });
  }
  return t;
}

WideTable read_wide_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open '" + path + "'");
  return read_wide_csv(in);
}

AlphabetSpec parse_alphabet(const std::string& raw) {
  std::string text = trim(raw);
  const std::string qprefix = "quantile:";
  if (text.rfind(qprefix, 0) == 0) {
    return AlphabetSpec::with_quantiles(split(text.substr(qprefix.size()), ','));
  }
  std::vector<std::string> symbols;
  std::vector<double> thresholds;
  const auto tokens = split(text, ',');
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto at = tokens[i].find('@');
    if (i + 1 == tokens.size()) {
      if (at != std::string::npos) throw ConfigError("last alphabet symbol takes no threshold");
      symbols.push_back(tokens[i]);
      break;
    }
    if (at == std::string::npos) {
      throw ConfigError("alphabet symbol '" + tokens[i] + "' needs '@threshold'");
    }
    double thr = 0;
    if (!parse_double(trim(tokens[i].substr(at + 1)), thr)) {
      throw ConfigError("bad threshold in '" + tokens[i] + "'");
    }
    symbols.push_back(trim(tokens[i].substr(0, at)));
    thresholds.push_back(thr);
  }
  return AlphabetSpec::with_thresholds(std::move(symbols), std::move(thresholds));
}

SymbolicDatabase to_symbolic(const WideTable& table,
                             const std::map<std::string, std::string>& alphabets) {
  SymbolicDatabase db;
  try {
    db.grid = grid_from_timestamps(table.timestamps);
  } catch (const IngestError& e) {
    // Positions count data rows; the header occupies line 1.
    throw IngestError(std::string(e.what()).substr(0, std::string(e.what()).find(" (row")),
                      e.row() + 1);
  }
  for (const auto& [name, spec] : alphabets) {
    if (name != "default" &&
        std::find(table.series.begin(), table.series.end(), name) == table.series.end()) {
      throw ConfigError("alphabet given for unknown series '" + name + "'");
    }
  }
  for (std::size_t c = 0; c < table.series.size(); ++c) {
    const auto& name = table.series[c];
    if (!table.numeric[c]) {
      db.series.push_back(symbolic_from_strings(name, table.columns[c]));
      continue;
    }
    auto it = alphabets.find(name);
    if (it == alphabets.end()) it = alphabets.find("default");
    if (it == alphabets.end()) {
      throw ConfigError("numeric series '" + name + "' needs an alphabet (alphabet." + name +
                        " or alphabet.default)");
    }
    RawSeries raw{name, table.timestamps, {}};
    raw.values.reserve(table.columns[c].size());
    for (const auto& cell : table.columns[c]) raw.values.push_back(std::stod(cell));
    db.series.push_back(symbolize(raw, parse_alphabet(it->second)));
  }
  db.validate();
  return db;
}

void write_symbolic_csv(std::ostream& out, const SymbolicDatabase& db) {
  out << "timestamp";
  for (const auto& s : db.series) out << ',' << s.id;
  out << '\n';
  for (std::size_t i = 0; i < db.grid.length; ++i) {
    out << db.grid.at(i);
    for (const auto& s : db.series) out << ',' << s.symbol_at(i);
    out << '\n';
  }
}

json config_to_json(const MiningConfig& c) {
  json j;
  j["sigma_min"] = c.sigma_min;
  j["sigma_max"] = c.effective_sigma_max() ? json(*c.effective_sigma_max()) : json(nullptr);
  j["delta"] = c.delta;
  j["epsilon"] = c.epsilon;
  j["min_overlap"] = c.min_overlap;
  j["t_max"] = c.t_max;
  j["mode"] = std::string(to_string(c.mode));
  j["pruning"] = std::string(to_string(c.pruning));
  j["max_pattern_len"] = c.max_pattern_len;
  return j;
}

json pattern_to_json(const PatternResult& r, const SequenceDatabase& db) {
  json j;
  j["length"] = r.pattern.size();
  j["key"] = r.pattern.key();
  json events = json::array();
  for (auto e : r.pattern.events()) events.push_back(db.catalog.label(e));
  j["events"] = events;
  json triples = json::array();
  for (const auto& t : r.pattern.triples()) {
    triples.push_back(
        {{"relation", std::string(to_string(t.relation))}, {"left", t.left_slot}, {"right", t.right_slot}});
  }
  j["triples"] = triples;
  j["support"] = r.support;
  j["relative_support"] = r.relative_support;
  j["confidence"] = r.confidence;
  json seqs = json::array();
  json wits = json::array();
  for (std::size_t i = 0; i < r.sequences.size(); ++i) {
    const auto& seq = db.sequences[r.sequences[i]];
    seqs.push_back(seq.id);
    json w = json::array();
    for (auto idx : r.witnesses[i]) {
      w.push_back({seq.instances[idx].interval.start(), seq.instances[idx].interval.end()});
    }
    wits.push_back(w);
  }
  j["sequences"] = seqs;
  j["witnesses"] = wits;
  return j;
}

json counters_to_json(const LevelCounters& c) {
  return {{"k", c.k},
          {"groups_generated", c.groups_generated},
          {"groups_pruned_apriori", c.groups_pruned_apriori},
          {"groups_evaluated", c.groups_evaluated},
          {"patterns_generated", c.patterns_generated},
          {"patterns_pruned_transitivity", c.patterns_pruned_transitivity},
          {"patterns_verified", c.patterns_verified},
          {"patterns_accepted", c.patterns_accepted},
          {"patterns_rejected", c.patterns_rejected},
          {"relation_checks", c.relation_checks}};
}

json approximation_to_json(const ApproximationLog& log) {
  json j;
  j["window_samples"] = log.window_samples;
  j["pruned_series_fraction"] = log.pruned_series_fraction();
  j["pruned_pair_fraction"] = log.pruned_pair_fraction();
  json series = json::array();
  for (std::size_t i = 0; i < log.series.size(); ++i) {
    series.push_back({{"series", log.series[i]}, {"kept", static_cast<bool>(log.series_kept[i])}});
  }
  j["series"] = series;
  json pairs = json::array();
  for (const auto& d : log.pairs) {
    json p{{"x", log.series[d.x]},
           {"y", log.series[d.y]},
           {"nmi_xy", d.nmi_xy},
           {"nmi_yx", d.nmi_yx},
           {"prunable", d.thresholds.prunable},
           {"mu_min", d.thresholds.mu_min},
           {"mu_min_source", std::string(to_string(d.thresholds.min_source))},
           {"mu_max", d.thresholds.mu_max ? json(*d.thresholds.mu_max) : json(nullptr)},
           {"kept", d.kept},
           {"reason", d.reason}};
    pairs.push_back(p);
  }
  j["pairs"] = pairs;
  return j;
}

json report_to_json(const MiningReport& report, const SequenceDatabase& db) {
  json j;
  j["config"] = config_to_json(report.config);
  j["sequences"] = report.sequence_count;
  j["window"] = db.window;
  j["overlap"] = db.overlap;
  json singles = json::array();
  for (const auto& e : report.single_events) {
    const auto& t = db.catalog.type(e.event);
    singles.push_back({{"event", db.catalog.label(e.event)},
                       {"series", t.series},
                       {"symbol", t.symbol},
                       {"support", e.support},
                       {"relative_support", e.relative_support}});
  }
  j["single_events"] = singles;
  json patterns = json::array();
  for (const auto& p : report.patterns) patterns.push_back(pattern_to_json(p, db));
  j["patterns"] = patterns;
  json levels = json::array();
  for (const auto& c : report.levels) levels.push_back(counters_to_json(c));
  j["counters"] = counters_to_json(report.totals);
  j["counters"].erase("k");
  j["counters"]["levels"] = levels;
  j["candidates_verified"] = report.candidates_verified;
  j["peak_live_patterns"] = report.peak_live_patterns;
  j["timing"] = {{"mining_seconds", report.mining_seconds},
                 {"mi_seconds", report.approximation ? report.approximation->mi_seconds : 0.0}};
  if (report.approximation) j["approximation"] = approximation_to_json(*report.approximation);
  return j;
}

void write_pattern_table(std::ostream& out, const MiningReport& report,
                         const SequenceDatabase& db) {
  out << "# single events (" << report.single_events.size() << ")\n";
  for (const auto& e : report.single_events) {
    out << db.catalog.label(e.event) << "\tsupport " << std::fixed << std::setprecision(1)
        << 100.0 * e.relative_support << "%\n";
  }
  out << "# patterns (" << report.patterns.size() << ")\n";
  out << "len\tsupport%\tconfidence%\tpattern\n";
  for (const auto& p : report.patterns) {
    out << p.pattern.size() << '\t' << std::fixed << std::setprecision(1)
        << 100.0 * p.relative_support << '\t' << 100.0 * p.confidence << '\t'
        << p.pattern.describe(db.catalog) << '\n';
  }
}

GenSpec gen_spec_from_json(const json& j) {
  static const std::vector<std::string> known = {
      "seed", "series", "timestamps", "alphabet_size", "alphabet_sizes", "persistence",
      "window_samples", "origin", "period", "blocks", "plants"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown generator key '" + key + "'");
    }
  }
  GenSpec s;
  s.seed = j.value("seed", s.seed);
  s.series = j.value("series", s.series);
  s.timestamps = j.value("timestamps", s.timestamps);
  s.alphabet_size = j.value("alphabet_size", s.alphabet_size);
  s.alphabet_sizes = j.value("alphabet_sizes", s.alphabet_sizes);
  s.persistence = j.value("persistence", s.persistence);
  s.window_samples = j.value("window_samples", s.window_samples);
  s.origin = j.value("origin", s.origin);
  s.period = j.value("period", s.period);
  for (const auto& b : j.value("blocks", json::array())) {
    s.blocks.push_back({b.at("series").get<std::vector<std::size_t>>(), b.value("flip_rate", 0.0)});
  }
  for (const auto& p : j.value("plants", json::array())) {
    PlantedChain chain;
    chain.rate = p.value("rate", 0.0);
    chain.count = p.value("count", std::size_t{0});
    chain.straddle = p.value("straddle", false);
    for (const auto& e : p.at("events")) {
      chain.events.push_back({e.at("series").get<std::size_t>(), e.value("symbol", 1u),
                              e.value("offset", std::size_t{0}), e.value("length", std::size_t{1})});
    }
    s.plants.push_back(std::move(chain));
  }
  s.validate();
  return s;
}

json gen_spec_to_json(const GenSpec& s) {
  json j{{"seed", s.seed},
         {"series", s.series},
         {"timestamps", s.timestamps},
         {"alphabet_size", s.alphabet_size},
         {"persistence", s.persistence},
         {"window_samples", s.window_samples},
         {"origin", s.origin},
         {"period", s.period}};
  if (!s.alphabet_sizes.empty()) j["alphabet_sizes"] = s.alphabet_sizes;
  json blocks = json::array();
  for (const auto& b : s.blocks) blocks.push_back({{"series", b.series}, {"flip_rate", b.flip_rate}});
  j["blocks"] = blocks;
  json plants = json::array();
  for (const auto& p : s.plants) {
    json events = json::array();
    for (const auto& e : p.events) {
      events.push_back(
          {{"series", e.series}, {"symbol", e.symbol}, {"offset", e.offset}, {"length", e.length}});
    }
    plants.push_back({{"events", events}, {"rate", p.rate}, {"count", p.count}, {"straddle", p.straddle}});
  }
  j["plants"] = plants;
  return j;
}

json manifest_to_json(const GenManifest& m) {
  json occ = json::array();
  for (const auto& o : m.occurrences) {
    occ.push_back({{"plant", o.plant},
                   {"start_sample", o.start_sample},
                   {"window", o.window},
                   {"straddles", o.straddles},
                   {"split_guaranteed", o.split_guaranteed}});
  }
  json blocks = json::array();
  for (const auto& b : m.blocks) {
    json names = json::array();
    for (auto s : b) names.push_back(series_name(s));
    blocks.push_back(names);
  }
  json planted = json::array();
  for (auto s : m.planted_series) planted.push_back(series_name(s));
  return {{"seed", m.seed},
          {"windows", m.windows},
          {"blocks", blocks},
          {"planted_series", planted},
          {"occurrences", occ}};
}

json hlh1_to_json(const Hlh1& h, const EventCatalog& catalog) {
  json eh = json::object();
  json sh = json::array();
  for (const auto& [e, post] : h.events()) {
    eh[catalog.label(e)] = post.sequences;
    for (std::size_t i = 0; i < post.sequences.size(); ++i) {
      sh.push_back({{"event", catalog.label(e)},
                    {"sequence", post.sequences[i]},
                    {"instances", post.instances[i]}});
    }
  }
  return {{"EH", eh}, {"SH", sh}};
}

json hlhk_to_json(const HlhK& h, const EventCatalog& catalog) {
  json eh = json::array();
  json ph = json::array();
  json sh = json::array();
  for (const auto& [key, entry] : h.groups()) {
    json names = json::array();
    for (auto e : key) names.push_back(catalog.label(e));
    json pats = json::array();
    for (const auto& p : entry.patterns) {
      pats.push_back(p.key());
      const auto& seqs = *h.pattern_sequences(p);
      ph.push_back({{"pattern", p.key()}, {"sequences", seqs}});
      const auto& wits = *h.witnesses(p);
      for (std::size_t i = 0; i < seqs.size(); ++i) {
        sh.push_back({{"pattern", p.key()}, {"sequence", seqs[i]}, {"witness", wits[i]}});
      }
    }
    eh.push_back({{"group", names}, {"sequences", entry.sequences}, {"patterns", pats}});
  }
  return {{"k", h.k()}, {"EH", eh}, {"PH", ph}, {"SH", sh}};
}

}  // namespace tempo
