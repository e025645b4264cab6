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


#include "cfqkd/protocol.h"

#include <algorithm>
#include <type_traits>

namespace cfqkd {

const char *classification_name(Classification c) {
    switch (c) {
        case Classification::no_click:
            return "no_click";
        case Classification::key_candidate:
            return "key_candidate";
        case Classification::announced_monitor:
            return "announced_monitor";
        case Classification::multi_click_discard:
            return "multi_click_discard";
    }
    return "?";
}

DetectorIllumination route_pulse(const RoundConfig &cfg, const PulseState &pulse, int bit_bob) {
    const Mode sl = counter_rotate(pulse.sl, bit_bob == 0 ? Rotation::deg90 : Rotation::deg0);
    const bool sl_passes = std::norm(sl.jones(0)) >= std::norm(sl.jones(1));
    const auto [transmitted, reflected] = apply_pbs(sl, cfg.pbs);

    DetectorIllumination out;
    out.mean_photons[2] = reflected.mean_photons();
    if (pulse.coherent && sl_passes) {
        const auto [bright, dark] = combine_bs(transmitted, pulse.ls);
        const double eps = cfg.visibility_noise_eps;
        out.mean_photons[0] = (1 - eps) * bright.mean_photons();
        out.mean_photons[1] = dark.mean_photons() + eps * bright.mean_photons();
    } else {
        // Either phase coherence is gone or only orthogonally polarized leakage reaches the splitter.
        const double total = transmitted.mean_photons() + pulse.ls.mean_photons();
        out.mean_photons[0] = total / 2;
        out.mean_photons[1] = total / 2;
    }
    return out;
}

RoundOutcome run_round(const RoundConfig &cfg, int bit_alice, int bit_bob, const AttackModel &attack, RoundRng &rng) {
    RoundOutcome out;
    out.bit_alice = bit_alice;
    out.bit_bob = bit_bob;

    PulseState pulse = prepare_pulse(cfg, bit_alice);
    const double channel_db = cfg.channel.loss_db();
    std::visit(
        [&](const auto &model) {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, NoAttack>) {
                pulse.sl = attenuate(pulse.sl, channel_db);
            } else if constexpr (std::is_same_v<T, VacuumAttackModel>) {
                const bool attacked = unit_interval(rng()) < model.fraction;
                const int bit_eve = draw_bit(rng);
                if (attacked) {
                    out.bit_eve = bit_eve;
                    std::tie(pulse, out.eve) =
                        apply_vacuum_attack(model, bit_eve, bit_alice, bit_bob, pulse, cfg.eve_detector, rng);
                }
                pulse.sl = attenuate(pulse.sl, channel_db);
            } else {
                std::tie(pulse.sl, out.eve) = pns_split(pulse.sl, model, cfg.eve_detector, rng);
            }
        },
        attack);
    pulse.sl = attenuate(pulse.sl, std::max(0.0, cfg.long_arm_excess_db()));
    pulse.ls = attenuate(pulse.ls, cfg.loss_short_db + cfg.effective_attn2_db());

    const DetectorIllumination light = route_pulse(cfg, pulse, bit_bob);
    for (size_t k = 0; k < 3; ++k) {
        const double incident = light.mean_photons[k] * db_to_transmission(cfg.path_loss_db[k]);
        out.clicks[k] = detect(cfg.detectors[k], incident, rng);
    }

    const int n_clicks = out.d1() + out.d2() + out.d3();
    if (n_clicks == 0) {
        out.classification = Classification::no_click;
    } else if (n_clicks > 1) {
        out.classification = Classification::multi_click_discard;
    } else if (out.d2()) {
        out.classification = Classification::key_candidate;
        out.key_bit_alice = bit_alice;
        out.key_bit_bob = bit_bob;
    } else {
        out.classification = Classification::announced_monitor;
    }
    return out;
}

void sift(RoundOutcome &outcome, RoundRng &rng) {
    if (outcome.classification != Classification::key_candidate) {
        return;
    }
    if (draw_bit(rng)) {
        outcome.classification = Classification::announced_monitor;
        // Announced bits are public but stay attached to the event for the monitor counts.
        return;
    }
    if (outcome.eve.inferred_bit) {
        outcome.eve.correct = *outcome.eve.inferred_bit == *outcome.key_bit_alice;
    }
}

MonitorCounters &MonitorCounters::operator+=(const MonitorCounters &o) {
    c1 += o.c1;
    c2 += o.c2;
    c3 += o.c3;
    c4 += o.c4;
    c5 += o.c5;
    c6 += o.c6;
    pulses_same += o.pulses_same;
    pulses_diff += o.pulses_diff;
    coincidences_d3_d12 += o.coincidences_d3_d12;
    sifted += o.sifted;
    sifted_errors += o.sifted_errors;
    multi_click += o.multi_click;
    for (size_t k = 0; k < 3; ++k) {
        detector_totals[k] += o.detector_totals[k];
    }
    return *this;
}

EveTally &EveTally::operator+=(const EveTally &o) {
    sifted_with_guess += o.sifted_with_guess;
    sifted_informed += o.sifted_informed;
    sifted_wrong += o.sifted_wrong;
    attacked_rounds += o.attacked_rounds;
    return *this;
}

MonitorCounters accumulate(MonitorCounters c, const RoundOutcome &r) {
    const bool same = r.same_bits();
    (same ? c.pulses_same : c.pulses_diff) += 1;
    for (size_t k = 0; k < 3; ++k) {
        c.detector_totals[k] += r.clicks[k].clicked;
    }
    if (r.d1()) {
        (same ? c.c1 : c.c2) += 1;
    }
    if (r.d3()) {
        (same ? c.c3 : c.c4) += 1;
    }
    if (r.classification == Classification::announced_monitor && r.d2_alone()) {
        (same ? c.c5 : c.c6) += 1;
    }
    if (r.classification == Classification::key_candidate) {
        c.sifted += 1;
        c.sifted_errors += *r.key_bit_alice != *r.key_bit_bob;
    }
    if (r.classification == Classification::multi_click_discard) {
        c.multi_click += 1;
    }
    if (r.d3() && (r.d1() || r.d2())) {
        c.coincidences_d3_d12 += 1;
    }
    return c;
}

EveTally accumulate(EveTally t, const RoundOutcome &r) {
    t.attacked_rounds += r.eve.attacked;
    if (r.classification == Classification::key_candidate && r.eve.inferred_bit) {
        t.sifted_with_guess += 1;
        t.sifted_informed += r.eve.informed();
        t.sifted_wrong += *r.eve.inferred_bit != r.bit_alice;
    }
    return t;
}

}  // namespace cfqkd
