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


#ifndef CFQKD_PULSE_H
#define CFQKD_PULSE_H

#include <array>
#include <numbers>
#include <optional>

#include "cfqkd/channel.h"
#include "cfqkd/optics.h"

namespace cfqkd {

using Mode = ModeAmplitude<double>;

/// Where the configured mean photon number `mu` is defined.
enum class NormalizationPlane : uint8_t {
    /// mu is the photon number of the prepared two-path state; sl and ls each start with mu/2.
    input,
    /// mu is defined at the HR attenuator output; each component is first attenuated by the forward
    /// pass through the opposite arm.
    at_hr,
};

/// Everything a single round needs to know about the interferometer and detectors.
struct RoundConfig {
    double mu = 1.0;
    double loss_long_db = 9.0;
    double loss_short_db = 3.0;
    /// Short-arm attenuator. Unset means balanced: loss_long_db - loss_short_db.
    std::optional<double> attn2_db;
    /// Extra loss between the routing optics and D1, D2, D3.
    std::array<double, 3> path_loss_db{0.0, 0.0, 0.0};
    double visibility_noise_eps = 0.0183299389002037;  // (1 - V) / (1 + V) at V = 0.964
    PbsExtinction pbs = PbsExtinction::symmetric(30.5);
    double birefringent_phase = 0.4 * std::numbers::pi;
    double pm_compensation_phase = 0.4 * std::numbers::pi;
    std::array<DetectorModel, 3> detectors{
        DetectorModel{DetectorLabel::d1, 0.1, 1.0e-5},
        DetectorModel{DetectorLabel::d2, 0.1, 5.0e-6},
        DetectorModel{DetectorLabel::d3, 0.1, 1.5e-5},
    };
    DetectorModel eve_detector{DetectorLabel::eve, 1.0, 0.0};
    ChannelModel channel;
    NormalizationPlane plane = NormalizationPlane::input;

    double effective_attn2_db() const;
    /// Power transmission of the sl component from preparation to Bob's decoder, fiber included.
    double sl_transmission() const;
    /// Power transmission of the ls component from preparation to the output splitter.
    double ls_transmission() const;
    /// Long-arm loss that is not the public channel.
    double long_arm_excess_db() const;

    /// Throws std::invalid_argument on the first violated constraint.
    void validate() const;

    bool operator==(const RoundConfig &) const = default;
};

/// The two interfering path components of one weak pulse.
struct PulseState {
    Mode sl;
    Mode ls;
    /// Whether sl and ls still carry a fixed relative phase; false after any which-path diversion.
    bool coherent = true;
};

/// Alice's state preparation: sl carries her bit as H (0) or V (1), ls is always H. The residual
/// birefringent phase on V light is applied and compensated here.
PulseState prepare_pulse(const RoundConfig &cfg, int bit_alice);

}  // namespace cfqkd

#endif
