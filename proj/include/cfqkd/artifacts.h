// Copyright 2026 The cfqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef CFQKD_ARTIFACTS_H
#define CFQKD_ARTIFACTS_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cfqkd/mc_engine.h"
#include "cfqkd/oracle.h"
#include "cfqkd/scenario.h"
#include "cfqkd/security.h"

namespace cfqkd {

enum class TableFormat : uint8_t { csv, json };

/// One output file held in memory.
struct ArtifactFile {
    std::string name;
    std::string content;
};

/// Everything a command produces. Every file carries the scenario fingerprint and seed.
struct RunArtifacts {
    std::string fingerprint;
    uint64_t seed = 0;
    std::vector<ArtifactFile> files;
    /// Human-readable digest printed by the command line tool.
    std::string report;

    const ArtifactFile *find(const std::string &name) const;
};

/// A table with named columns; rendered as CSV or as a JSON array of objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

std::string render_table(const Table &t, const std::string &fingerprint, uint64_t seed, TableFormat format);

/// The simulation summary as JSON, with the security figures implied by its QBER. Timing is
/// excluded so that the text depends only on the scenario.
std::string summary_json(const SimulationSummary &summary, const Scenario &s);

/// Two-sample z score of each monitoring statistic of `observed` against `baseline`.
std::vector<std::pair<std::string, double>> monitor_deviation(
    const MonitorCounters &observed, const MonitorCounters &baseline);

/// Raw counts under the same names `named_expectations` uses.
std::vector<std::pair<std::string, uint64_t>> named_counts(const MonitorCounters &counters, const EveTally &eve);

/// Table of (counter, value).
Table counters_table(const SimulationSummary &summary);

/// Simulated against expected per-pulse rates, with the Wilson standard error and z score.
Table oracle_diff_table(const SimulationSummary &summary, const OracleResult &oracle);

/// Table of (family, mu, L_km, gain).
Table curves_table(const std::vector<GainCurve> &curves);

/// Overrides the command line may apply on top of a scenario file.
struct RunOverrides {
    std::optional<uint64_t> seed;
    std::optional<uint64_t> pulses;
};

void apply_overrides(Scenario &s, const RunOverrides &o);

RunArtifacts simulate_artifacts(const Scenario &s, TableFormat format, const EngineOptions &options = {});

RunArtifacts oracle_artifacts(const Scenario &s, TableFormat format);

RunArtifacts curves_artifacts(const Scenario &s, TableFormat format);

const std::vector<std::string> &preset_names();

/// Runs a named preset from the scenario files in `preset_dir`. Throws ConfigError for an unknown
/// name or a broken preset file.
RunArtifacts run_preset(
    const std::string &name,
    const std::filesystem::path &preset_dir,
    const RunOverrides &overrides,
    TableFormat format,
    const EngineOptions &options = {});

struct ArtifactIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes every file plus manifest.json into `out_dir` (created if missing). Returns the paths
/// written. Throws ArtifactIoError.
std::vector<std::filesystem::path> emit(const RunArtifacts &artifacts, const std::filesystem::path &out_dir);

}  // namespace cfqkd

#endif
