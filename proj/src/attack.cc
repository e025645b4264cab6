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


#include "cfqkd/attack.h"

#include <cmath>
#include <stdexcept>

#include "routing_law.h"

namespace cfqkd {

namespace {

constexpr Disposition capture_sl{Route::eve, Route::pass, true, false};
constexpr Disposition capture_ls{Route::pass, Route::eve, true, false};
constexpr Disposition keep_interference{Route::pass, Route::pass, false, true};

Relation relation(int a, int b) {
    return a == b ? Relation::eq : Relation::neq;
}

/// Eve reads the bit off the polarization of light she holds.
int measure_polarization(const Mode &m) {
    return std::norm(m.jones(1)) > std::norm(m.jones(0)) ? 1 : 0;
}

}  // namespace

VacuumAttackModel VacuumAttackModel::make(VacuumVariant variant, double fraction) {
    VacuumAttackModel m;
    m.variant = variant;
    m.fraction = fraction;
    const int i = vacuum_case_index(Relation::eq, Relation::eq);
    const int ii = vacuum_case_index(Relation::eq, Relation::neq);
    const int iii = vacuum_case_index(Relation::neq, Relation::eq);
    const int iv = vacuum_case_index(Relation::neq, Relation::neq);
    m.case_table[i] = capture_sl;
    m.case_table[ii] = capture_sl;
    m.case_table[iv] = capture_ls;
    m.case_table[iii] = variant == VacuumVariant::relational_capture ? capture_ls : keep_interference;
    m.validate();
    return m;
}

const Disposition &VacuumAttackModel::disposition(int bit_eve, int bit_alice, int bit_bob) const {
    return case_table[vacuum_case_index(relation(bit_eve, bit_alice), relation(bit_alice, bit_bob))];
}

void VacuumAttackModel::validate() const {
    if (!(fraction >= 0 && fraction <= 1)) {
        throw std::invalid_argument("attack fraction must lie in [0,1]");
    }
    for (const auto &d : case_table) {
        if ((d.sl == Route::eve || d.ls == Route::eve) && !d.force_incoherent) {
            throw std::invalid_argument("a disposition that diverts a component to Eve must break coherence");
        }
    }
}

PnsAttackModel PnsAttackModel::full_budget(const ChannelModel &channel) {
    return {channel.eta_loss(), true, channel};
}

std::optional<std::string> PnsAttackModel::budget_warning() const {
    if (!lossless_replacement && tap_fraction > 0) {
        return "PNS tap adds loss on top of the fiber; Bob's rates fall below the unattacked level";
    }
    if (lossless_replacement && tap_fraction > channel.eta_loss() + 1e-12) {
        return "PNS tap exceeds the channel loss budget; Bob's rates fall below the unattacked level";
    }
    return std::nullopt;
}

void PnsAttackModel::validate() const {
    if (!(tap_fraction >= 0 && tap_fraction <= 1)) {
        throw std::invalid_argument("PNS tap fraction must lie in [0,1]");
    }
    channel.validate();
}

std::pair<PulseState, EveRecord> apply_vacuum_attack(
    const VacuumAttackModel &model,
    int bit_eve,
    int bit_alice,
    int bit_bob,
    const PulseState &pulse,
    const DetectorModel &eve_detector,
    RoundRng &rng) {
    const Disposition &d = model.disposition(bit_eve, bit_alice, bit_bob);
    PulseState out = pulse;
    EveRecord rec;
    rec.attacked = true;
    Mode held = Mode::vacuum(PathLabel::aux);
    if (d.sl == Route::eve) {
        held = pulse.sl;
        rec.captured_sl = true;
        out.sl = Mode::vacuum(PathLabel::sl);
    }
    if (d.ls == Route::eve) {
        held.jones += pulse.ls.jones;
        out.ls = Mode::vacuum(PathLabel::ls);
    }
    if (d.eve_exchanges_polarization) {
        out.sl = exchange_polarizations(out.sl);
    }
    if (d.force_incoherent) {
        out.coherent = false;
    }
    rec.captured_energy = held.mean_photons();
    rec.eve_click = detect(eve_detector, rec.captured_energy, rng);
    if (rec.captured_sl && rec.eve_click.cause == ClickCause::signal) {
        rec.inferred_bit = measure_polarization(held);
        rec.inference_rule = InferenceRule::measured_sl;
    } else {
        rec.inferred_bit = bit_eve;
        rec.inference_rule = InferenceRule::guess_own_bit;
    }
    return {out, rec};
}

std::pair<Mode, EveRecord> pns_split(
    const Mode &channel_mode, const PnsAttackModel &model, const DetectorModel &eve_detector, RoundRng &rng) {
    Mode tapped{PathLabel::aux, channel_mode.jones * std::sqrt(model.tap_fraction)};
    Mode forwarded{channel_mode.path, channel_mode.jones * std::sqrt(model.transmitted_fraction())};
    if (!model.lossless_replacement) {
        forwarded = attenuate(forwarded, model.channel.loss_db());
    }
    EveRecord rec;
    rec.attacked = true;
    rec.captured_sl = channel_mode.path == PathLabel::sl;
    rec.captured_energy = tapped.mean_photons();
    rec.eve_click = detect(eve_detector, rec.captured_energy, rng);
    if (rec.captured_sl && rec.eve_click.cause == ClickCause::signal) {
        rec.inferred_bit = measure_polarization(tapped);
        rec.inference_rule = InferenceRule::measured_sl;
    }
    return {forwarded, rec};
}

VacuumStats enumerate_vacuum_stats(const VacuumAttackModel &model, const RoundConfig &cfg) {
    model.validate();
    VacuumStats s;
    double same = 0, diff = 0, bob_errors = 0, eve_guesses = 0, eve_wrong = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double delta = a ? cfg.birefringent_phase - cfg.pm_compensation_phase : 0.0;
            for (int attacked = 0; attacked < 2; ++attacked) {
                const double w_attack = attacked ? model.fraction : 1 - model.fraction;
                for (int e = 0; e < 2; ++e) {
                    const double w = 0.25 * w_attack * 0.5;
                    if (w == 0) {
                        continue;
                    }
                    double sl = 0.5, ls = 0.5;
                    bool coherent = true;
                    bool swap = false;
                    if (attacked) {
                        const Disposition &d = model.disposition(e, a, b);
                        sl = d.sl == Route::eve ? 0.0 : sl;
                        ls = d.ls == Route::eve ? 0.0 : ls;
                        coherent = !d.force_incoherent;
                        swap = d.eve_exchanges_polarization;
                    }
                    const bool reflects = (a == b) != swap;
                    const auto det = routing_law::detector_energies(
                        sl, reflects, ls, coherent, delta, cfg.visibility_noise_eps, cfg.pbs);
                    const double key = w * det[1] / 2;
                    if (a == b) {
                        same += w;
                        s.c1 += w * det[0];
                        s.c3 += w * det[2];
                        s.c5 += key;
                    } else {
                        diff += w;
                        s.c2 += w * det[0];
                        s.c4 += w * det[2];
                        s.c6 += key;
                        bob_errors += key;
                    }
                    s.sifted += key;
                    if (attacked) {
                        // A photon that reached D2 never reached Eve, so she can only guess.
                        eve_guesses += key;
                        if (e != a) {
                            eve_wrong += key;
                        }
                        if (det[1] > 1e-12 && model.fraction == 1.0) {
                            s.key_cases[vacuum_case_index(relation(e, a), relation(a, b))] = true;
                        }
                    }
                }
            }
        }
    }
    s.c1 /= same;
    s.c3 /= same;
    s.c5 /= same;
    s.c2 /= diff;
    s.c4 /= diff;
    s.c6 /= diff;
    s.bob_error = s.sifted > 0 ? bob_errors / s.sifted : 0;
    s.eve_error = eve_guesses > 0 ? eve_wrong / eve_guesses : 0;
    return s;
}

}  // namespace cfqkd
