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


#ifndef CFQKD_SECURITY_H
#define CFQKD_SECURITY_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cfqkd/channel.h"
#include "cfqkd/protocol.h"

namespace cfqkd {

/// Shannon information per bit of a binary channel with error rate D: 1 + D log2 D + (1-D) log2(1-D),
/// with 0 log 0 = 0.
double shannon_info(double error_rate);

/// e^-mu mu^n / n!
double poisson_pmf(double mu, unsigned n);

/// P(n > 0) for a Poisson photon number with mean mu.
double poisson_nonvacuum(double mu);

/// Eve's share of the sifted key under the passive PNS attack on the counterfactual protocol:
/// (1 - e^(-mu/2)) * eta_loss.
double pns_gain_bound(double mu, const ChannelModel &channel);

/// Comparison curve for a conventional prepare-and-measure link:
/// min(1, P(n >= 2) / (1 - e^(-mu T))) with T the channel transmission.
double conventional_pns_gain(double mu, const ChannelModel &channel);

enum class Verdict : uint8_t { secure, insecure, marginal };

const char *verdict_name(Verdict v);

struct SecretRate {
    double rate = 0;
    Verdict verdict = Verdict::marginal;
};

SecretRate secret_rate(double info_bob, double info_eve);

struct SecurityReport {
    double qber_bob = 0;
    double info_bob = 0;
    double info_eve = 0;
    double pns_bound = 0;
    double secret_rate = 0;
    Verdict verdict = Verdict::marginal;
};

/// Bob's information from his error rate against Eve's passive-PNS share of the key.
SecurityReport security_report(double qber_bob, double mu, const ChannelModel &channel);

enum class CurveFamily : uint8_t { counterfactual, conventional };

const char *curve_family_name(CurveFamily f);

struct GainPoint {
    double length_km = 0;
    double gain = 0;
};

struct GainCurve {
    CurveFamily family = CurveFamily::counterfactual;
    double mu = 0;
    std::vector<GainPoint> points;
};

/// Evaluates each requested family for every mu over the length grid. Curves come out grouped by
/// family, then mu, in input order.
std::vector<GainCurve> eve_gain_curves(
    std::span<const double> mus,
    std::span<const double> lengths_km,
    std::span<const CurveFamily> families,
    double attenuation_db_per_km = 0.25);

/// Evenly spaced grid 0, step, 2 step, ... up to and including max_km.
std::vector<double> length_grid(double max_km, double step_km);

enum class AnomalyVerdict : uint8_t { no_attack, attack, insufficient_data };

const char *anomaly_verdict_name(AnomalyVerdict v);

struct AnomalyBaseline {
    /// Expected C2/C1 of the unattacked system.
    double no_attack_ratio = 4.0;
    /// Expected C2/C1 under the attack being screened for.
    double attacked_ratio = 2.0;
};

/// Compares the observed C1:C2 interval with the unattacked and attacked expectations.
AnomalyVerdict detect_anomaly(
    const MonitorCounters &counters, const AnomalyBaseline &baseline = {}, double confidence = 0.95);

}  // namespace cfqkd

#endif
