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

// Command-line front end: `tempo mine`, `tempo gen`, `tempo bench`.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tempo/datagen.hpp"
#include "tempo/io.hpp"
#include "tempo/run.hpp"

namespace {

int run_mine_command(const std::string& config_path,
                     const std::vector<std::pair<std::string, std::string>>& overrides) {
  tempo::RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw tempo::ConfigError("cannot open config '" + config_path + "'");
    for (const auto& [k, v] : tempo::read_key_values(in)) cfg.set(k, v);
  }
  for (const auto& [k, v] : overrides) cfg.set(k, v);
  if (cfg.input.empty()) throw tempo::ConfigError("no input given (input = ... or --input)");
  cfg.finalize();
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';

  const auto outcome = tempo::run_mine(cfg);
  tempo::write_outputs(cfg, outcome);
  std::cout << "sequences: " << outcome.sequences.size() << '\n'
            << "single events: " << outcome.report.single_events.size() << '\n'
            << "patterns: " << outcome.report.patterns.size() << '\n';
  if (outcome.exact) {
    std::cout << "accuracy: " << tempo::accuracy(outcome.report, *outcome.exact) << '\n';
  }
  std::cout << "report: " << (std::filesystem::path(cfg.output) / "report.json").string() << '\n';
  return 0;
}

int run_gen_command(const std::string& spec_path, const std::string& out_dir,
                    std::optional<std::uint64_t> seed) {
  std::ifstream in(spec_path);
  if (!in) throw tempo::ConfigError("cannot open spec '" + spec_path + "'");
  auto spec = tempo::gen_spec_from_json(nlohmann::json::parse(in));
  if (seed) spec.seed = *seed;
  const auto data = tempo::generate(spec);
  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);
  std::ofstream csv(dir / "data.csv");
  tempo::write_symbolic_csv(csv, data.db);
  std::ofstream manifest(dir / "manifest.json");
  manifest << tempo::manifest_to_json(data.manifest).dump(2) << '\n';
  std::cout << "series: " << data.db.series.size() << ", timestamps: " << data.db.grid.length
            << ", plant occurrences: " << data.manifest.occurrences.size() << '\n';
  return 0;
}

int run_bench_command(const std::string& matrix_path, const std::string& out_path) {
  std::ifstream in(matrix_path);
  if (!in) throw tempo::ConfigError("cannot open matrix '" + matrix_path + "'");
  std::ofstream out(out_path);
  if (!out) throw tempo::ConfigError("cannot write '" + out_path + "'");
  const auto failures = tempo::run_bench(in, out);
  std::cout << "metrics: " << out_path << " (" << failures << " failed cells)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal pattern mining over multivariate symbolic time series"};
  app.require_subcommand(1);

  auto* mine = app.add_subcommand("mine", "Mine frequent or rare temporal patterns");
  std::string config_path;
  std::vector<std::string> settings;
  std::vector<std::pair<std::string, std::string>> overrides;
  mine->add_option("-c,--config", config_path, "Flat key = value configuration file");
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  const Flag flags[] = {
      {"--input", "input", "Wide CSV input"},
      {"--output", "output", "Output directory"},
      {"--window", "window", "Sequence window length"},
      {"--overlap", "overlap", "Overlap between consecutive windows (t_ov)"},
      {"--t-max", "t_max", "Maximal pattern duration"},
      {"--epsilon", "epsilon", "Relation tolerance"},
      {"--min-overlap", "min_overlap", "Minimal overlap duration (d_o)"},
      {"--sigma-min", "sigma_min", "Minimum relative support"},
      {"--sigma-max", "sigma_max", "Maximum relative support (rare mode)"},
      {"--delta", "delta", "Minimum confidence"},
      {"--mode", "mode", "frequent | rare"},
      {"--pruning", "pruning", "none | apriori | transitivity | all"},
      {"--max-len", "max_pattern_len", "Maximal pattern length"},
      {"--approximate", "approximate", "Screen series pairs by mutual information (true|false)"},
      {"--compare-exact", "compare_exact", "Also run exact mining and report accuracy"},
      {"--threads", "threads", "Worker threads"},
  };
  std::vector<std::string> flag_values(std::size(flags));
  for (std::size_t i = 0; i < std::size(flags); ++i) {
    mine->add_option(flags[i].name, flag_values[i], flags[i].help);
  }
  mine->add_option("--set", settings, "Extra key=value setting (repeatable)");

  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset from a JSON spec");
  std::string spec_path, gen_out = "gen";
  std::optional<std::uint64_t> seed;
  gen->add_option("-s,--spec", spec_path, "Generator specification (JSON)")->required();
  gen->add_option("-o,--output", gen_out, "Output directory for data.csv and manifest.json");
  gen->add_option("--seed", seed, "Override the spec's seed");

  auto* bench = app.add_subcommand("bench", "Run a configuration matrix and record metrics");
  std::string matrix_path, metrics_path = "metrics.csv";
  bench->add_option("-m,--matrix", matrix_path, "Matrix file (key = v1, v2, ...)")->required();
  bench->add_option("-o,--output", metrics_path, "Metrics CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mine) {
      for (std::size_t i = 0; i < std::size(flags); ++i) {
        if (mine->count(flags[i].name)) overrides.emplace_back(flags[i].key, flag_values[i]);
      }
      for (const auto& s : settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw tempo::ConfigError("--set expects key=value: " + s);
        overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
      }
      return run_mine_command(config_path, overrides);
    }
    if (*gen) return run_gen_command(spec_path, gen_out, seed);
    if (*bench) return run_bench_command(matrix_path, metrics_path);
  } catch (const tempo::IngestError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const tempo::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
