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


#include "cfqkd/security.h"

#include <cmath>
#include <stdexcept>

namespace cfqkd {

double ChannelModel::eta_loss() const {
    return -std::expm1(-loss_db() / 10.0 * std::log(10.0));
}

namespace {

double xlog2x(double x) {
    return x > 0 ? x * std::log2(x) : 0.0;
}

}  // namespace

double shannon_info(double d) {
    if (!(d >= 0 && d <= 1)) {
        throw std::invalid_argument("error rate must lie in [0,1]");
    }
    return 1 + xlog2x(d) + xlog2x(1 - d);
}

double poisson_pmf(double mu, unsigned n) {
    if (!(mu >= 0)) {
        throw std::invalid_argument("Poisson mean must be >= 0");
    }
    if (mu == 0) {
        return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
}

double poisson_nonvacuum(double mu) {
    if (!(mu >= 0)) {
        throw std::invalid_argument("Poisson mean must be >= 0");
    }
    return -std::expm1(-mu);
}

double pns_gain_bound(double mu, const ChannelModel &channel) {
    return poisson_nonvacuum(0.5 * mu) * channel.eta_loss();
}

double conventional_pns_gain(double mu, const ChannelModel &channel) {
    const double transmission = 1 - channel.eta_loss();
    const double multi = poisson_nonvacuum(mu) - mu * std::exp(-mu);
    const double detected = poisson_nonvacuum(mu * transmission);
    if (detected <= 0) {
        return 1.0;
    }
    return std::min(1.0, multi / detected);
}

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::secure:
            return "secure";
        case Verdict::insecure:
            return "insecure";
        case Verdict::marginal:
            return "marginal";
    }
    return "?";
}

SecretRate secret_rate(double info_bob, double info_eve) {
    const double diff = info_bob - info_eve;
    if (std::abs(diff) <= 1e-12) {
        return {0.0, Verdict::marginal};
    }
    return diff > 0 ? SecretRate{diff, Verdict::secure} : SecretRate{0.0, Verdict::insecure};
}

SecurityReport security_report(double qber_bob, double mu, const ChannelModel &channel) {
    SecurityReport r;
    r.qber_bob = qber_bob;
    r.info_bob = shannon_info(qber_bob);
    r.pns_bound = pns_gain_bound(mu, channel);
    r.info_eve = r.pns_bound;
    const SecretRate s = secret_rate(r.info_bob, r.info_eve);
    r.secret_rate = s.rate;
    r.verdict = s.verdict;
    return r;
}

const char *curve_family_name(CurveFamily f) {
    return f == CurveFamily::counterfactual ? "counterfactual" : "conventional";
}

std::vector<GainCurve> eve_gain_curves(
    std::span<const double> mus,
    std::span<const double> lengths_km,
    std::span<const CurveFamily> families,
    double attenuation_db_per_km) {
    if (mus.empty() || lengths_km.empty() || families.empty()) {
        throw std::invalid_argument("gain curves need nonempty mu, length and family lists");
    }
    std::vector<GainCurve> curves;
    for (CurveFamily family : families) {
        for (double mu : mus) {
            if (!(mu > 0)) {
                throw std::invalid_argument("mean photon number must be > 0");
            }
            GainCurve curve{family, mu, {}};
            curve.points.reserve(lengths_km.size());
            for (double length : lengths_km) {
                const ChannelModel channel{length, attenuation_db_per_km};
                const double gain = family == CurveFamily::counterfactual ? pns_gain_bound(mu, channel)
                                                                          : conventional_pns_gain(mu, channel);
                curve.points.push_back({length, gain});
            }
            curves.push_back(std::move(curve));
        }
    }
    return curves;
}

std::vector<double> length_grid(double max_km, double step_km) {
    if (!(max_km >= 0) || !(step_km > 0)) {
        throw std::invalid_argument("length grid needs max >= 0 and step > 0");
    }
    std::vector<double> grid;
    const auto n = static_cast<size_t>(std::floor(max_km / step_km + 1e-9));
    for (size_t i = 0; i <= n; ++i) {
        grid.push_back(static_cast<double>(i) * step_km);
    }
    if (max_km - grid.back() > 1e-9 * std::max(1.0, max_km)) {
        grid.push_back(max_km);
    }
    return grid;
}

const char *anomaly_verdict_name(AnomalyVerdict v) {
    switch (v) {
        case AnomalyVerdict::no_attack:
            return "no_attack";
        case AnomalyVerdict::attack:
            return "attack";
        case AnomalyVerdict::insufficient_data:
            return "insufficient_data";
    }
    return "?";
}

AnomalyVerdict detect_anomaly(const MonitorCounters &c, const AnomalyBaseline &baseline, double confidence) {
    if (c.c1 == 0 || c.c2 == 0) {
        return AnomalyVerdict::insufficient_data;
    }
    const double z = two_sided_z(confidence);
    const Estimate p = wilson_interval(c.c1, c.c1 + c.c2, z);
    const Estimate ratio{static_cast<double>(c.c2) / static_cast<double>(c.c1), (1 - p.upper) / p.upper,
                         (1 - p.lower) / p.lower};
    const bool baseline_fits = ratio.contains(baseline.no_attack_ratio);
    const bool attack_fits = ratio.contains(baseline.attacked_ratio);
    if (baseline_fits && attack_fits) {
        return AnomalyVerdict::insufficient_data;
    }
    return baseline_fits ? AnomalyVerdict::no_attack : AnomalyVerdict::attack;
}

}  // namespace cfqkd
