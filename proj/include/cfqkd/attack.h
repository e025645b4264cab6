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


#ifndef CFQKD_ATTACK_H
#define CFQKD_ATTACK_H

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "cfqkd/channel.h"
#include "cfqkd/pulse.h"
#include "cfqkd/rng.h"

namespace cfqkd {

/// Eavesdropper interventions on the quantum channel.
///
/// The vacuum attack acts on a fraction of rounds: Eve picks her own bit and, depending on how it
/// relates to Alice's and Bob's bits, captures one of the two path components (or, in the literal
/// reading of the four-case analysis, re-encodes the channel mode). The passive PNS attack taps the
/// channel with a beam splitter and forwards the rest over a lossless line.

enum class VacuumVariant : uint8_t { relational_capture, paper_literal };

enum class Route : uint8_t { pass, eve };

enum class Relation : uint8_t { eq, neq };

struct Disposition {
    Route sl = Route::pass;
    Route ls = Route::pass;
    bool force_incoherent = false;
    /// Eve flips the polarization of the sl mode in the channel, undoing Bob's diversion.
    bool eve_exchanges_polarization = false;

    bool operator==(const Disposition &) const = default;
};

/// Index of the case (i)..(iv) for the relations (B_Eve vs B_Alice, B_Alice vs B_Bob).
constexpr int vacuum_case_index(Relation eve_alice, Relation alice_bob) {
    return (eve_alice == Relation::eq ? 0 : 2) + (alice_bob == Relation::eq ? 0 : 1);
}

struct VacuumAttackModel {
    VacuumVariant variant = VacuumVariant::relational_capture;
    double fraction = 1.0;
    /// Indexed by vacuum_case_index; entries 0..3 are cases (i)..(iv).
    std::array<Disposition, 4> case_table{};

    static VacuumAttackModel make(VacuumVariant variant, double fraction);

    const Disposition &disposition(int bit_eve, int bit_alice, int bit_bob) const;

    void validate() const;

    bool operator==(const VacuumAttackModel &) const = default;
};

struct PnsAttackModel {
    /// Fraction of the channel mode's power diverted to Eve.
    double tap_fraction = 0.0;
    /// Eve replaces the fiber with a lossless line, so only her tap removes power.
    bool lossless_replacement = true;
    ChannelModel channel;

    /// Tap sized to exactly the power the fiber would have absorbed.
    static PnsAttackModel full_budget(const ChannelModel &channel);

    double transmitted_fraction() const {
        return 1.0 - tap_fraction;
    }

    /// Set when the tap removes more than the replaced fiber did, which Bob's rates would reveal.
    std::optional<std::string> budget_warning() const;

    void validate() const;

    bool operator==(const PnsAttackModel &) const = default;
};

struct NoAttack {
    bool operator==(const NoAttack &) const = default;
};

using AttackModel = std::variant<NoAttack, VacuumAttackModel, PnsAttackModel>;

enum class InferenceRule : uint8_t {
    none,
    /// Eve measured the polarization of captured or tapped sl light.
    measured_sl,
    /// Eve saw nothing useful and assumes B_Alice = B_Eve.
    guess_own_bit,
};

struct EveRecord {
    bool attacked = false;
    double captured_energy = 0.0;
    /// Captured light came from the sl mode and so carries Alice's bit in its polarization.
    bool captured_sl = false;
    ClickSample eve_click;
    std::optional<int> inferred_bit;
    InferenceRule inference_rule = InferenceRule::none;
    /// Filled in once the round is known to have produced a sifted key bit.
    std::optional<bool> correct;

    /// Eve registered sl light and therefore knows Alice's bit.
    bool informed() const {
        return inference_rule == InferenceRule::measured_sl;
    }
};

/// Applies one attacked round's disposition and samples Eve's detector (one draw).
std::pair<PulseState, EveRecord> apply_vacuum_attack(
    const VacuumAttackModel &model,
    int bit_eve,
    int bit_alice,
    int bit_bob,
    const PulseState &pulse,
    const DetectorModel &eve_detector,
    RoundRng &rng);

/// Splits the channel mode: Eve keeps `tap_fraction` of its power and the rest is forwarded, over a
/// lossless line when `lossless_replacement` is set, else through the fiber. Samples Eve's detector
/// on the tap (one draw).
std::pair<Mode, EveRecord> pns_split(
    const Mode &channel_mode, const PnsAttackModel &model, const DetectorModel &eve_detector, RoundRng &rng);

/// Exact expectations in the single-photon limit (lossless, unit efficiency, no dark counts).
struct VacuumStats {
    /// Per same-bit pulse (c1, c3, c5) and per different-bit pulse (c2, c4, c6).
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
    /// Probability per pulse that the round yields a sifted key bit.
    double sifted = 0;
    double bob_error = 0;
    double eve_error = 0;
    /// Which of cases (i)..(iv) can produce a sifted key bit under full attack.
    std::array<bool, 4> key_cases{};

    double ratio_c2_over_c1() const {
        return c2 / c1;
    }
};

VacuumStats enumerate_vacuum_stats(const VacuumAttackModel &model, const RoundConfig &cfg);

}  // namespace cfqkd

#endif
