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


#ifndef CFQKD_SCENARIO_H
#define CFQKD_SCENARIO_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cfqkd/attack.h"
#include "cfqkd/pulse.h"

namespace cfqkd {

enum class AttackType : uint8_t { none, vacuum, pns };

struct AttackConfig {
    AttackType type = AttackType::none;
    VacuumVariant variant = VacuumVariant::relational_capture;
    double fraction = 1.0;
    /// PNS tap; unset means the full channel loss budget.
    std::optional<double> tap_fraction;
    bool lossless_replacement = true;

    bool operator==(const AttackConfig &) const = default;
};

/// Forces a party's bit instead of drawing it (used for per-setting acquisitions).
enum class BitChoice : uint8_t { random, zero, one };

/// Grids used by the sweep presets and curve generation.
struct AnalysisOptions {
    std::vector<double> sweep_values;
    std::vector<double> curve_mus{0.1, 0.5, 1.0, 5.0};
    double curve_max_km = 200.0;
    double curve_step_km = 1.0;

    bool operator==(const AnalysisOptions &) const = default;
};

/// A complete, reproducible run description.
struct Scenario {
    RoundConfig round;
    AttackConfig attack;
    uint64_t n_pulses = 2'700'000;
    double rep_rate_hz = 5000.0;
    std::optional<double> duration_s = 540.0;
    uint64_t seed = 1;
    BitChoice bit_alice = BitChoice::random;
    BitChoice bit_bob = BitChoice::random;
    AnalysisOptions analysis;

    void validate() const;

    bool operator==(const Scenario &) const = default;
};

AttackModel build_attack(const Scenario &s);

/// A scenario file could not be used. `line` is 0 when the problem is not tied to one line.
struct ConfigError : std::invalid_argument {
    int line;

    ConfigError(const std::string &message, int line = 0);
};

/// Canonical text form: every key, fixed order, round-trip exact doubles.
std::string write_scenario(const Scenario &s);

Scenario parse_scenario(std::string_view text);

Scenario load_config(const std::filesystem::path &path);

/// 16 hex digits identifying the canonical text of `s`.
std::string fingerprint(const Scenario &s);

/// Sets the pulse count directly, dropping any duration.
void set_pulses(Scenario &s, uint64_t n_pulses);

}  // namespace cfqkd

#endif
