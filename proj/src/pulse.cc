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


#include "cfqkd/pulse.h"

#include <cmath>
#include <string>

namespace cfqkd {

double RoundConfig::effective_attn2_db() const {
    return attn2_db.value_or(loss_long_db - loss_short_db);
}

double RoundConfig::sl_transmission() const {
    return db_to_transmission(loss_long_db);
}

double RoundConfig::ls_transmission() const {
    return db_to_transmission(loss_short_db + effective_attn2_db());
}

double RoundConfig::long_arm_excess_db() const {
    return loss_long_db - channel.loss_db();
}

namespace {

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

}  // namespace

void RoundConfig::validate() const {
    require(mu > 0 && std::isfinite(mu), "mu must be > 0");
    require(loss_long_db >= 0, "loss_long_db must be >= 0");
    require(loss_short_db >= 0, "loss_short_db must be >= 0");
    require(effective_attn2_db() >= 0,
            "attn2_db must be >= 0 (balancing needs loss_long_db >= loss_short_db)");
    for (double p : path_loss_db) {
        require(p >= 0, "per-detector path loss must be >= 0 dB");
    }
    require(visibility_noise_eps >= 0 && visibility_noise_eps <= 1, "visibility_noise_eps must lie in [0,1]");
    pbs.validate();
    require(std::isfinite(birefringent_phase) && std::isfinite(pm_compensation_phase), "phases must be finite");
    for (const auto &d : detectors) {
        d.validate();
    }
    eve_detector.validate();
    channel.validate();
    require(long_arm_excess_db() >= -1e-12, "loss_long_db must include the channel loss (length x attenuation)");
}

PulseState prepare_pulse(const RoundConfig &cfg, int bit_alice) {
    double sl_energy = cfg.mu / 2;
    double ls_energy = cfg.mu / 2;
    if (cfg.plane == NormalizationPlane::at_hr) {
        sl_energy *= cfg.ls_transmission();
        ls_energy *= cfg.sl_transmission();
    }
    PulseState pulse;
    pulse.sl = Mode::coherent(PathLabel::sl, sl_energy, horizontal<double>());
    pulse.sl = rotate(pulse.sl, bit_alice ? Rotation::deg90 : Rotation::deg0);
    pulse.sl = phase_shift(pulse.sl, cfg.birefringent_phase, PhaseTarget::vertical);
    pulse.sl = phase_shift(pulse.sl, -cfg.pm_compensation_phase, PhaseTarget::vertical);
    pulse.ls = Mode::coherent(PathLabel::ls, ls_energy, horizontal<double>());
    pulse.coherent = true;
    return pulse;
}

}  // namespace cfqkd
