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

// End-to-end runs driven by flat key=value configuration: ingest, split,
// mine (exact or approximate) and report; plus benchmark matrices.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tempo/miner.hpp"
#include "tempo/transform.hpp"

namespace tempo {

struct RunConfig {
  std::string input;
  std::string output = "out";
  Duration window = 0;
  Duration overlap = 0;
  std::optional<Duration> t_max;
  MiningConfig mining;
  bool approximate = false;
  bool compare_exact = false;
  std::size_t threads = 1;
  std::uint64_t seed = 1;
  std::map<std::string, std::string> alphabets;
  std::vector<std::string> warnings;

  /// Applies one setting; throws ConfigError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Resolves defaults and mode rules and validates; call before running.
  void finalize();
  nlohmann::json to_json() const;
};

/// Reads `key = value` lines ('#' starts a comment). Errors name the line.
std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in);
RunConfig parse_run_config(std::istream& in);

struct MineOutcome {
  SymbolicDatabase symbolic;
  SequenceDatabase sequences;
  MiningReport report;
  std::optional<MiningReport> exact;
  nlohmann::json json;
};

/// Runs a finalized configuration end to end.
MineOutcome run_mine(const RunConfig& config);
/// Runs on an already-symbolic database (skips ingestion).
MineOutcome run_mine(const RunConfig& config, SymbolicDatabase symbolic);

/// Writes report.json and patterns.txt into config.output.
void write_outputs(const RunConfig& config, const MineOutcome& outcome);

/// Expands a matrix (values may be comma-separated lists; alphabet entries
/// are taken verbatim) into the Cartesian product of run configurations,
/// runs each cell sequentially and writes one metrics row per cell. Failing
/// cells are recorded and the run continues. Returns the number of failures.
std::size_t run_bench(std::istream& matrix, std::ostream& metrics_csv);

}  // namespace tempo
