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


#ifndef CFQKD_TEST_UTIL_H
#define CFQKD_TEST_UTIL_H

#include <filesystem>
#include <limits>

#include "cfqkd/scenario.h"

namespace cfqkd::fixtures {

inline std::filesystem::path preset_dir() {
    return CFQKD_PRESET_DIR;
}

/// Lossless interferometer with perfect optics and detectors; only the public fiber attenuates.
inline Scenario ideal_scenario(double mu = 0.1) {
    Scenario s;
    s.round.mu = mu;
    s.round.loss_long_db = s.round.channel.loss_db();
    s.round.loss_short_db = 0;
    s.round.attn2_db.reset();
    s.round.path_loss_db = {0, 0, 0};
    s.round.visibility_noise_eps = 0;
    s.round.pbs = PbsExtinction{};
    for (auto &d : s.round.detectors) {
        d.efficiency = 1;
        d.dark_prob = 0;
    }
    set_pulses(s, 1'000'000);
    return s;
}

/// The calibrated system shipped as the table1 preset.
inline Scenario table1_scenario() {
    return load_config(preset_dir() / "table1.cfg");
}

inline Scenario with_attack(Scenario s, AttackType type, double fraction = 1.0) {
    s.attack.type = type;
    s.attack.fraction = fraction;
    return s;
}

}  // namespace cfqkd::fixtures

#endif
