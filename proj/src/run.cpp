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

#include "tempo/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tempo/io.hpp"

namespace tempo {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_fraction(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size() || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v = -1;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size() || v < 0) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key.rfind("alphabet.", 0) == 0) {
    const auto series = key.substr(9);
    if (series.empty()) throw ConfigError("alphabet key needs a series name");
    parse_alphabet(value);  // validate eagerly
    alphabets[series] = value;
  } else if (key == "input") {
    input = value;
  } else if (key == "output") {
    output = value;
  } else if (key == "window") {
    window = parse_duration(value);
  } else if (key == "overlap" || key == "t_ov") {
    overlap = parse_duration(value);
  } else if (key == "t_max") {
    t_max = parse_duration(value);
  } else if (key == "epsilon") {
    mining.epsilon = parse_duration(value);
  } else if (key == "min_overlap" || key == "d_o") {
    mining.min_overlap = parse_duration(value);
  } else if (key == "sigma_min") {
    mining.sigma_min = parse_fraction(key, value);
  } else if (key == "sigma_max") {
    if (value == "inf" || value == "none" || value.empty()) {
      mining.sigma_max.reset();
    } else {
      mining.sigma_max = parse_fraction(key, value);
    }
  } else if (key == "delta") {
    mining.delta = parse_fraction(key, value);
  } else if (key == "mode") {
    mining.mode = parse_mode(value);
  } else if (key == "pruning") {
    mining.pruning = parse_pruning(value);
  } else if (key == "max_pattern_len") {
    mining.max_pattern_len = parse_count(key, value);
  } else if (key == "approximate") {
    approximate = parse_bool(key, value);
  } else if (key == "compare_exact") {
    compare_exact = parse_bool(key, value);
  } else if (key == "threads") {
    threads = std::max<std::size_t>(1, parse_count(key, value));
  } else if (key == "seed") {
    seed = parse_count(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void RunConfig::finalize() {
  if (window <= 0) throw ConfigError("window must be set to a positive duration");
  mining.t_max = t_max.value_or(window);
  if (mining.mode == Mode::Frequent && mining.sigma_max) {
    warnings.push_back("frequent mode ignores sigma_max");
    mining.sigma_max.reset();
  }
  mining.validate();
  if (overlap < 0 || overlap > mining.t_max || mining.t_max > window) {
    throw ConfigError("splitting requires 0 <= overlap <= t_max <= window");
  }
  if (overlap >= window) throw ConfigError("overlap must be smaller than the window");
}

json RunConfig::to_json() const {
  json j = config_to_json(mining);
  j["input"] = input;
  j["output"] = output;
  j["window"] = window;
  j["overlap"] = overlap;
  j["approximate"] = approximate;
  j["compare_exact"] = compare_exact;
  j["threads"] = threads;
  j["seed"] = seed;
  j["alphabets"] = alphabets;
  return j;
}

std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::move(key), trim(line.substr(eq + 1)));
  }
  return out;
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  for (const auto& [k, v] : read_key_values(in)) cfg.set(k, v);
  return cfg;
}

MineOutcome run_mine(const RunConfig& config, SymbolicDatabase symbolic) {
  MineOutcome out;
  out.symbolic = std::move(symbolic);
  out.sequences =
      build_sequence_db(out.symbolic, config.window, config.overlap, config.mining.t_max);
  MinerOptions opts;
  opts.threads = config.threads;
  if (config.approximate) {
    out.report = mine_approximate(out.symbolic, out.sequences, config.mining, opts);
    if (config.compare_exact) out.exact = mine(out.sequences, config.mining, opts);
  } else {
    out.report = mine(out.sequences, config.mining, opts);
  }
  out.json = report_to_json(out.report, out.sequences);
  out.json["run"] = config.to_json();
  out.json["input"] = {{"series", out.symbolic.series.size()},
                       {"timestamps", out.symbolic.grid.length},
                       {"period", out.symbolic.grid.period}};
  out.json["warnings"] = config.warnings;
  if (out.exact) {
    out.json["accuracy"] = accuracy(out.report, *out.exact);
    out.json["exact_pattern_count"] = out.exact->patterns.size();
  }
  return out;
}

MineOutcome run_mine(const RunConfig& config) {
  const auto table = read_wide_csv_file(config.input);
  return run_mine(config, to_symbolic(table, config.alphabets));
}

void write_outputs(const RunConfig& config, const MineOutcome& outcome) {
  std::filesystem::create_directories(config.output);
  const auto dir = std::filesystem::path(config.output);
  std::ofstream json_out(dir / "report.json");
  json_out << outcome.json.dump(2) << '\n';
  std::ofstream table_out(dir / "patterns.txt");
  write_pattern_table(table_out, outcome.report, outcome.sequences);
  if (outcome.exact) {
    table_out << "# accuracy " << accuracy(outcome.report, *outcome.exact) << " ("
              << outcome.report.patterns.size() << " approximate / " << outcome.exact->patterns.size()
              << " exact patterns)\n";
  }
}

std::size_t run_bench(std::istream& matrix, std::ostream& metrics) {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& [key, value] : read_key_values(matrix)) {
    std::vector<std::string> values;
    if (key.rfind("alphabet.", 0) == 0) {
      values.push_back(value);
    } else {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) values.push_back(trim(item));
    }
    if (values.empty()) throw ConfigError("matrix key '" + key + "' has no values");
    axes.emplace_back(key, std::move(values));
  }

  metrics << "cell,params,status,wall_seconds,mi_seconds,sequences,patterns,groups_generated,"
             "groups_pruned_apriori,patterns_generated,patterns_pruned_transitivity,"
             "patterns_verified,candidates_verified,relation_checks,peak_live_patterns,"
             "pruned_series_fraction,error\n";

  std::size_t cells = 1;
  for (const auto& a : axes) cells *= a.second.size();
  std::size_t failures = 0;
  std::map<std::string, SymbolicDatabase> inputs;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    RunConfig cfg;
    std::string params;
    std::size_t rest = cell;
    std::string error;
    try {
      // Last axis varies fastest.
      std::vector<std::string> chosen(axes.size());
      for (std::size_t a = axes.size(); a-- > 0;) {
        chosen[a] = axes[a].second[rest % axes[a].second.size()];
        rest /= axes[a].second.size();
      }
      for (std::size_t a = 0; a < axes.size(); ++a) {
        if (axes[a].second.size() > 1) {
          params += (params.empty() ? "" : ";") + axes[a].first + "=" + chosen[a];
        }
        cfg.set(axes[a].first, chosen[a]);
      }
      cfg.finalize();
      const std::string input_key = cfg.input + "|" + json(cfg.alphabets).dump();
      if (!inputs.count(input_key)) {
        inputs[input_key] = to_symbolic(read_wide_csv_file(cfg.input), cfg.alphabets);
      }
      const auto t0 = std::chrono::steady_clock::now();
      auto outcome = run_mine(cfg, inputs[input_key]);
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto& r = outcome.report;
      metrics << cell << ',' << '"' << params << '"' << ",ok," << wall << ','
              << (r.approximation ? r.approximation->mi_seconds : 0.0) << ',' << r.sequence_count
              << ',' << r.patterns.size() << ',' << r.totals.groups_generated << ','
              << r.totals.groups_pruned_apriori << ',' << r.totals.patterns_generated << ','
              << r.totals.patterns_pruned_transitivity << ',' << r.totals.patterns_verified << ','
              << r.candidates_verified << ',' << r.totals.relation_checks << ','
              << r.peak_live_patterns << ','
              << (r.approximation ? r.approximation->pruned_series_fraction() : 0.0) << ",\n";
      continue;
    } catch (const std::exception& e) {
      error = e.what();
    }
    ++failures;
    std::replace(error.begin(), error.end(), '"', '\'');
    metrics << cell << ",\"" << params << "\",failed,,,,,,,,,,,,,,\"" << error << "\"\n";
  }
  return failures;
}

}  // namespace tempo
