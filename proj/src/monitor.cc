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


#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "cfqkd/protocol.h"

namespace cfqkd {

Estimate wilson_interval(uint64_t k, uint64_t n, double z) {
    if (n == 0) {
        throw InsufficientCounts("Wilson interval needs at least one trial");
    }
    const double nd = static_cast<double>(n);
    const double p = static_cast<double>(k) / nd;
    const double z2 = z * z;
    const double denom = 1 + z2 / nd;
    const double center = (p + z2 / (2 * nd)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / nd + z2 / (4 * nd * nd)) / denom;
    return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

double two_sided_z(double confidence) {
    if (!(confidence > 0 && confidence < 1)) {
        throw std::invalid_argument("confidence must lie in (0,1)");
    }
    return boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2);
}

namespace {

/// Interval for b/a obtained from the Wilson interval of the proportion a/(a+b).
Estimate count_ratio(uint64_t a, uint64_t b, double z) {
    const Estimate p = wilson_interval(a, a + b, z);
    auto odds = [](double q) {
        return q > 0 ? (1 - q) / q : std::numeric_limits<double>::infinity();
    };
    return {static_cast<double>(b) / static_cast<double>(a), odds(p.upper), odds(p.lower)};
}

double visibility_from_qber(double q) {
    return (4 - 5 * q) / (4 - 3 * q);
}

}  // namespace

MonitorReport monitor_report(const MonitorCounters &c, double confidence) {
    if (c.c1 == 0) {
        throw InsufficientCounts("C1:C2 needs at least one same-bit D1 count");
    }
    if (c.c5 + c.c6 == 0) {
        throw InsufficientCounts("visibility and error rate need monitored D2 counts");
    }
    const double z = two_sided_z(confidence);
    MonitorReport r;
    r.confidence = confidence;
    r.ratio_c1_c2 = count_ratio(c.c1, c.c2, z);
    if (c.c4 > 0) {
        r.ratio_c3_c4 = count_ratio(c.c4, c.c3, z);
    }
    r.qber = wilson_interval(c.c6, c.c5 + c.c6, z);
    const double c5 = static_cast<double>(c.c5);
    const double c6 = static_cast<double>(c.c6);
    r.visibility = {(4 * c5 - c6) / (4 * c5 + c6), visibility_from_qber(r.qber.upper),
                    visibility_from_qber(r.qber.lower)};
    if (c.detector_totals[2] > 0) {
        r.coincidence_prob = wilson_interval(c.coincidences_d3_d12, c.detector_totals[2], z);
    }
    return r;
}

std::optional<MonitorReport> try_monitor_report(const MonitorCounters &counters, double confidence) {
    try {
        return monitor_report(counters, confidence);
    } catch (const InsufficientCounts &) {
        return std::nullopt;
    }
}

}  // namespace cfqkd
