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


#include "cfqkd/oracle.h"

#include <algorithm>
#include <cmath>

#include "routing_law.h"

namespace cfqkd {

namespace {

std::array<double, 2> bit_weights(BitChoice c) {
    switch (c) {
        case BitChoice::zero:
            return {1.0, 0.0};
        case BitChoice::one:
            return {0.0, 1.0};
        case BitChoice::random:
            break;
    }
    return {0.5, 0.5};
}

double transmission(double loss_db) {
    return std::pow(10.0, -loss_db / 10.0);
}

/// Threshold click probability of a coherent input, dark counts included.
double click(const DetectorModel &d, double n) {
    return 1.0 - (1.0 - d.dark_prob) * std::exp(-d.efficiency * n);
}

/// Energies reaching the decoder for one branch of the enumeration.
struct Branch {
    double sl = 0;
    double ls = 0;
    bool coherent = true;
    bool swap = false;
    /// Probability that Eve's detector registers captured sl light (a signal click).
    double eve_informed = 0;
    /// Eve falls back to her own bit when not informed.
    bool eve_guesses = false;
    int eve_bit = 0;
};

/// Probabilities of the joint click patterns of three independent detectors.
struct ClickPattern {
    double d2_alone = 0;
    double multi = 0;
    double coincidence = 0;
};

ClickPattern joint(const std::array<double, 3> &p) {
    const double q1 = 1 - p[0], q2 = 1 - p[1], q3 = 1 - p[2];
    ClickPattern out;
    out.d2_alone = q1 * p[1] * q3;
    const double none = q1 * q2 * q3;
    const double exactly_one = p[0] * q2 * q3 + q1 * p[1] * q3 + q1 * q2 * p[2];
    out.multi = 1 - none - exactly_one;
    out.coincidence = p[2] * (1 - q1 * q2);
    return out;
}

}  // namespace

OracleResult enumeration_oracle(const Scenario &s, OracleMode mode) {
    s.validate();
    const RoundConfig &cfg = s.round;
    const bool single = mode == OracleMode::single_photon;

    double sl0 = single ? 0.5 : cfg.mu / 2;
    double ls0 = single ? 0.5 : cfg.mu / 2;
    const double ls_arm = transmission(cfg.loss_short_db + cfg.effective_attn2_db());
    const double fiber = transmission(cfg.channel.length_km * cfg.channel.attenuation_db_per_km);
    const double excess = transmission(std::max(0.0, cfg.loss_long_db - cfg.channel.length_km * cfg.channel.attenuation_db_per_km));
    if (!single && cfg.plane == NormalizationPlane::at_hr) {
        sl0 *= ls_arm;
        ls0 *= fiber * excess;
    }
    const double sl_after_fiber = single ? 1.0 : fiber;
    const double sl_excess = single ? 1.0 : excess;
    const double ls_gain = single ? 1.0 : ls_arm;

    const auto wa = bit_weights(s.bit_alice);
    const auto wb = bit_weights(s.bit_bob);

    OracleResult result;
    result.mode = mode;
    CounterExpectation &e = result.per_pulse;

    std::optional<VacuumAttackModel> vacuum;
    std::optional<PnsAttackModel> pns;
    const AttackModel attack = build_attack(s);
    if (const auto *v = std::get_if<VacuumAttackModel>(&attack)) {
        vacuum = *v;
    } else if (const auto *p = std::get_if<PnsAttackModel>(&attack)) {
        pns = *p;
    }

    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double w_setting = wa[a] * wb[b];
            if (w_setting == 0) {
                continue;
            }
            const double delta = a ? cfg.birefringent_phase - cfg.pm_compensation_phase : 0.0;

            std::vector<std::pair<double, Branch>> branches;
            if (vacuum) {
                if (vacuum->fraction < 1) {
                    branches.push_back({1 - vacuum->fraction, {sl0 * sl_after_fiber, ls0}});
                }
                if (vacuum->fraction > 0) {
                    for (int eb = 0; eb < 2; ++eb) {
                        const Disposition &d = vacuum->disposition(eb, a, b);
                        Branch br{sl0 * sl_after_fiber, ls0};
                        double held = 0;
                        if (d.sl == Route::eve) {
                            held += sl0;
                            br.sl = 0;
                        }
                        if (d.ls == Route::eve) {
                            br.ls = 0;
                        }
                        br.coherent = !d.force_incoherent;
                        br.swap = d.eve_exchanges_polarization;
                        br.eve_informed = (d.sl == Route::eve && !single)
                                              ? 1 - std::exp(-cfg.eve_detector.efficiency * held)
                                              : 0.0;
                        br.eve_guesses = true;
                        br.eve_bit = eb;
                        branches.push_back({vacuum->fraction * 0.5, br});
                    }
                }
            } else if (pns) {
                Branch br;
                const double forwarded = pns->lossless_replacement ? 1.0 : sl_after_fiber;
                br.sl = sl0 * (1 - pns->tap_fraction) * forwarded;
                br.ls = ls0;
                br.eve_informed = single ? 0.0 : 1 - std::exp(-cfg.eve_detector.efficiency * sl0 * pns->tap_fraction);
                branches.push_back({1.0, br});
            } else {
                branches.push_back({1.0, {sl0 * sl_after_fiber, ls0}});
            }

            SettingExpectation setting{a, b, w_setting, {}};
            for (const auto &[w_branch, br] : branches) {
                const double w = w_setting * w_branch;
                const bool reflects = (a == b) != br.swap;
                const auto light = routing_law::detector_energies(
                    br.sl * sl_excess, reflects, br.ls * ls_gain, br.coherent, delta, cfg.visibility_noise_eps, cfg.pbs);
                std::array<double, 3> p{};
                ClickPattern pattern;
                if (single) {
                    p = light;
                    pattern.d2_alone = light[1];
                } else {
                    for (size_t k = 0; k < 3; ++k) {
                        p[k] = click(cfg.detectors[k], light[k] * transmission(cfg.path_loss_db[k]));
                    }
                    pattern = joint(p);
                }
                const bool attacked = vacuum ? br.eve_guesses : pns.has_value();
                for (size_t k = 0; k < 3; ++k) {
                    setting.detector[k] += w_branch * p[k];
                }
                const double key = w * pattern.d2_alone / 2;
                if (a == b) {
                    e.pulses_same += w;
                    e.c1 += w * p[0];
                    e.c3 += w * p[2];
                    e.c5 += key;
                } else {
                    e.pulses_diff += w;
                    e.c2 += w * p[0];
                    e.c4 += w * p[2];
                    e.c6 += key;
                    e.sifted_errors += key;
                }
                e.sifted += key;
                e.multi_click += w * pattern.multi;
                e.coincidences_d3_d12 += w * pattern.coincidence;
                for (size_t k = 0; k < 3; ++k) {
                    e.detector_totals[k] += w * p[k];
                }
                if (attacked) {
                    e.eve_attacked_rounds += w;
                    e.eve_sifted_informed += key * br.eve_informed;
                    if (br.eve_guesses) {
                        e.eve_sifted_with_guess += key;
                        if (br.eve_bit != a) {
                            e.eve_sifted_wrong += key * (1 - br.eve_informed);
                        }
                    } else {
                        e.eve_sifted_with_guess += key * br.eve_informed;
                    }
                }
            }
            result.settings.push_back(setting);
        }
    }
    return result;
}

std::vector<NamedExpectation> named_expectations(const CounterExpectation &e) {
    return {
        {"c1", e.c1},
        {"c2", e.c2},
        {"c3", e.c3},
        {"c4", e.c4},
        {"c5", e.c5},
        {"c6", e.c6},
        {"pulses_same", e.pulses_same},
        {"pulses_diff", e.pulses_diff},
        {"coincidences_d3_d12", e.coincidences_d3_d12},
        {"sifted", e.sifted},
        {"sifted_errors", e.sifted_errors},
        {"multi_click", e.multi_click},
        {"d1_total", e.detector_totals[0]},
        {"d2_total", e.detector_totals[1]},
        {"d3_total", e.detector_totals[2]},
        {"eve_sifted_with_guess", e.eve_sifted_with_guess},
        {"eve_sifted_informed", e.eve_sifted_informed},
        {"eve_sifted_wrong", e.eve_sifted_wrong},
        {"eve_attacked_rounds", e.eve_attacked_rounds},
    };
}

}  // namespace cfqkd
