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

// File formats: wide CSV time series, JSON serialization of reports,
// generator specifications and manifests, and the HLH debug dump.

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tempo/datagen.hpp"
#include "tempo/hlh.hpp"
#include "tempo/miner.hpp"
#include "tempo/transform.hpp"

namespace tempo {

/// Parses an integer tick count or a clock time HH:MM[:SS] (as seconds).
Tick parse_timestamp(const std::string& text);
/// Parses a duration: plain integer ticks or a number with an s/m/h/d suffix
/// (converted to seconds).
Duration parse_duration(const std::string& text);

/// Wide CSV: header `timestamp,<series>,...`, one row per timestamp.
struct WideTable {
  std::vector<Tick> timestamps;
  std::vector<std::string> series;
  /// columns[c][row]
  std::vector<std::vector<std::string>> columns;
  /// True when every cell of the column parses as a finite number.
  std::vector<bool> numeric;
};

/// Throws IngestError with the 1-based line number of malformed input.
WideTable read_wide_csv(std::istream& in);
WideTable read_wide_csv_file(const std::string& path);

/// Parses an alphabet description: `Off@0.5,On` (symbols separated by their
/// thresholds, `name@threshold` meaning the next symbol starts at threshold)
/// or `quantile:Low,Mid,High`.
AlphabetSpec parse_alphabet(const std::string& text);

/// Symbolizes numeric columns with the alphabet registered for the series
/// (or under "default"); symbolic columns are taken verbatim. Timestamps
/// must be regularly spaced.
SymbolicDatabase to_symbolic(const WideTable& table,
                             const std::map<std::string, std::string>& alphabets);

void write_symbolic_csv(std::ostream& out, const SymbolicDatabase& db);

nlohmann::json config_to_json(const MiningConfig& config);
nlohmann::json pattern_to_json(const PatternResult& result, const SequenceDatabase& db);
nlohmann::json counters_to_json(const LevelCounters& counters);
nlohmann::json approximation_to_json(const ApproximationLog& log);
nlohmann::json report_to_json(const MiningReport& report, const SequenceDatabase& db);

/// Human-readable table: length, pattern, support %, confidence %.
void write_pattern_table(std::ostream& out, const MiningReport& report,
                         const SequenceDatabase& db);

GenSpec gen_spec_from_json(const nlohmann::json& j);
nlohmann::json gen_spec_to_json(const GenSpec& spec);
nlohmann::json manifest_to_json(const GenManifest& manifest);

nlohmann::json hlh1_to_json(const Hlh1& h, const EventCatalog& catalog);
nlohmann::json hlhk_to_json(const HlhK& h, const EventCatalog& catalog);

}  // namespace tempo
