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


#ifndef CFQKD_MC_ENGINE_H
#define CFQKD_MC_ENGINE_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfqkd/protocol.h"
#include "cfqkd/scenario.h"

namespace cfqkd {

struct EngineOptions {
    /// Worker threads. Results do not depend on this.
    unsigned lanes = 1;
    uint64_t batch_size = 65536;
};

struct SimulationSummary {
    std::string fingerprint;
    uint64_t seed = 0;
    uint64_t n_pulses = 0;
    MonitorCounters counters;
    EveTally eve;
    std::optional<MonitorReport> report;
    std::vector<std::string> warnings;
    /// Timing is informational and excluded from equality and emitted artifacts.
    double wall_time_s = 0;
    double pulses_per_second = 0;

    const std::array<uint64_t, 3> &detector_totals() const {
        return counters.detector_totals;
    }
    /// Share of the sifted key Eve knows from a measurement.
    std::optional<double> eve_informed_fraction() const;
    /// Share of Eve's guesses on sifted bits that are wrong.
    std::optional<double> eve_error_rate() const;

    static SimulationSummary empty(const Scenario &s);

    bool same_result(const SimulationSummary &other) const;
};

/// Runs `s.n_pulses` rounds. Batch i draws from substream(seed, i), so the result is a function of
/// the scenario alone. Throws std::invalid_argument on an invalid scenario.
SimulationSummary simulate(const Scenario &s, const EngineOptions &options = {});

/// Runs batches [first, first + count) only; `simulate` is the merge of all batches.
SimulationSummary simulate_batches(const Scenario &s, uint64_t first, uint64_t count, const EngineOptions &options = {});

/// Counter-wise sum; the report is recomputed. Throws std::invalid_argument on fingerprint mismatch.
SimulationSummary merge(const SimulationSummary &a, const SimulationSummary &b);

}  // namespace cfqkd

#endif
