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


#ifndef CFQKD_ORACLE_H
#define CFQKD_ORACLE_H

#include <array>
#include <string>
#include <vector>

#include "cfqkd/scenario.h"

namespace cfqkd {

/// Exact expectations obtained by enumerating bit settings, Eve's choices and dispositions.
///
/// `poisson` weights every detector with the exact threshold click probability of its coherent
/// input; since coherent modes are independent, joint click probabilities are products. This is
/// the exact mean of what `simulate` samples. `single_photon` drops all losses, efficiencies and
/// dark counts and reports routing fractions of one photon instead.
enum class OracleMode : uint8_t { single_photon, poisson };

struct SettingExpectation {
    int bit_alice = 0;
    int bit_bob = 0;
    /// Probability of the setting.
    double weight = 0;
    /// Click probabilities (poisson) or routing fractions (single_photon) of D1..D3, averaged over
    /// the attack branches.
    std::array<double, 3> detector{};
};

/// Expected value of each counter per pulse.
struct CounterExpectation {
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
    double pulses_same = 0;
    double pulses_diff = 0;
    double coincidences_d3_d12 = 0;
    double sifted = 0;
    double sifted_errors = 0;
    double multi_click = 0;
    std::array<double, 3> detector_totals{};
    double eve_sifted_with_guess = 0;
    double eve_sifted_informed = 0;
    double eve_sifted_wrong = 0;
    double eve_attacked_rounds = 0;
};

struct OracleResult {
    OracleMode mode = OracleMode::poisson;
    std::vector<SettingExpectation> settings;
    CounterExpectation per_pulse;

    double ratio_c1_c2() const {
        return per_pulse.c2 / per_pulse.c1;
    }
    double ratio_c3_c4() const {
        return per_pulse.c3 / per_pulse.c4;
    }
    double qber() const {
        return per_pulse.c6 / (per_pulse.c5 + per_pulse.c6);
    }
    double visibility() const {
        return (4 * per_pulse.c5 - per_pulse.c6) / (4 * per_pulse.c5 + per_pulse.c6);
    }
    double sifted_error() const {
        return per_pulse.sifted_errors / per_pulse.sifted;
    }
    double eve_error_rate() const {
        return per_pulse.eve_sifted_wrong / per_pulse.eve_sifted_with_guess;
    }
    double eve_informed_fraction() const {
        return per_pulse.eve_sifted_informed / per_pulse.sifted;
    }
};

OracleResult enumeration_oracle(const Scenario &s, OracleMode mode = OracleMode::poisson);

/// One named counter with its expected per-pulse value, for comparisons against simulation.
struct NamedExpectation {
    std::string name;
    double per_pulse = 0;
};

std::vector<NamedExpectation> named_expectations(const CounterExpectation &e);

}  // namespace cfqkd

#endif
