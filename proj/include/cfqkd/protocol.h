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


#ifndef CFQKD_PROTOCOL_H
#define CFQKD_PROTOCOL_H

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "cfqkd/attack.h"
#include "cfqkd/pulse.h"
#include "cfqkd/rng.h"

namespace cfqkd {

enum class Classification : uint8_t {
    no_click,
    /// D2 alone clicked; becomes a sifted key bit unless sift moves it to the monitor sample.
    key_candidate,
    /// Publicly announced: a lone D1 or D3 click, or a D2-alone click picked for monitoring.
    announced_monitor,
    multi_click_discard,
};

const char *classification_name(Classification c);

struct RoundOutcome {
    int bit_alice = 0;
    int bit_bob = 0;
    std::optional<int> bit_eve;
    /// D1, D2, D3.
    std::array<ClickSample, 3> clicks{};
    Classification classification = Classification::no_click;
    std::optional<int> key_bit_alice;
    std::optional<int> key_bit_bob;
    /// Eve's side of the round, including her detector's click.
    EveRecord eve;

    bool same_bits() const {
        return bit_alice == bit_bob;
    }
    bool d1() const {
        return clicks[0].clicked;
    }
    bool d2() const {
        return clicks[1].clicked;
    }
    bool d3() const {
        return clicks[2].clicked;
    }
    bool d2_alone() const {
        return d2() && !d1() && !d3();
    }
};

/// Mean photon numbers reaching each detector in one round, before detector efficiency.
struct DetectorIllumination {
    std::array<double, 3> mean_photons{};
};

/// Propagates a prepared (and possibly attacked) pulse through Bob's decoder and the output
/// splitter. Deterministic; exposed for tests and diagnostics.
DetectorIllumination route_pulse(const RoundConfig &cfg, const PulseState &pulse, int bit_bob);

/// One full round: preparation, channel (with attack), decoding and detection. Leaves D2-alone
/// rounds as key candidates; call `sift` to split them between key and monitor sample.
RoundOutcome run_round(const RoundConfig &cfg, int bit_alice, int bit_bob, const AttackModel &attack, RoundRng &rng);

/// Random half of the D2-alone rounds is announced for monitoring, the rest is kept as key.
/// Consumes one draw when the outcome is a key candidate, none otherwise.
void sift(RoundOutcome &outcome, RoundRng &rng);

/// The public monitoring counts. c1, c3, c5 are D1, D3, D2 counts in same-bit rounds; c2, c4, c6
/// the same detectors in different-bit rounds. c5 and c6 only count the D2-alone rounds that sift
/// moved into the monitor sample.
struct MonitorCounters {
    uint64_t c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
    uint64_t pulses_same = 0;
    uint64_t pulses_diff = 0;
    /// Rounds where D3 and at least one of D1, D2 clicked.
    uint64_t coincidences_d3_d12 = 0;
    uint64_t sifted = 0;
    uint64_t sifted_errors = 0;
    uint64_t multi_click = 0;
    /// Raw click totals of D1, D2, D3.
    std::array<uint64_t, 3> detector_totals{};

    uint64_t pulses() const {
        return pulses_same + pulses_diff;
    }

    MonitorCounters &operator+=(const MonitorCounters &other);
    bool operator==(const MonitorCounters &) const = default;
};

/// What Eve learned about the sifted key.
struct EveTally {
    /// Sifted rounds in which Eve holds a guess for Alice's bit.
    uint64_t sifted_with_guess = 0;
    /// Sifted rounds in which Eve measured sl light and therefore knows Alice's bit.
    uint64_t sifted_informed = 0;
    uint64_t sifted_wrong = 0;
    uint64_t attacked_rounds = 0;

    EveTally &operator+=(const EveTally &other);
    bool operator==(const EveTally &) const = default;
};

MonitorCounters accumulate(MonitorCounters counters, const RoundOutcome &outcome);
EveTally accumulate(EveTally tally, const RoundOutcome &outcome);

struct InsufficientCounts : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Point estimate with a confidence interval.
struct Estimate {
    double value = 0;
    double lower = 0;
    double upper = 0;

    bool contains(double x) const {
        return lower <= x && x <= upper;
    }
};

/// Wilson score interval for k successes in n trials at normal quantile z.
Estimate wilson_interval(uint64_t k, uint64_t n, double z);

/// Quantile of the standard normal for a two-sided interval at `confidence`.
double two_sided_z(double confidence);

struct MonitorReport {
    /// C2/C1; the ratio is quoted as "1 : value".
    Estimate ratio_c1_c2;
    /// C3/C4, the polarization extinction seen by D3. Unset when c4 = 0.
    std::optional<Estimate> ratio_c3_c4;
    /// (4 c5 - c6) / (4 c5 + c6).
    Estimate visibility;
    /// c6 / (c5 + c6).
    Estimate qber;
    /// P(D3 and (D1 or D2)) / P(D3). Unset without D3 clicks.
    std::optional<Estimate> coincidence_prob;
    double confidence = 0.95;
};

/// Throws InsufficientCounts when c1 = 0 or c5 + c6 = 0.
MonitorReport monitor_report(const MonitorCounters &counters, double confidence = 0.95);

std::optional<MonitorReport> try_monitor_report(const MonitorCounters &counters, double confidence = 0.95);

}  // namespace cfqkd

#endif
