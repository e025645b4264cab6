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

#include "gtest/gtest.h"

using namespace cfqkd;

TEST(security, shannon_info_values) {
    EXPECT_NEAR(shannon_info(1.0 / 3), 0.0817, 0.0005);
    EXPECT_NEAR(shannon_info(0.067), 0.645, 0.002);
    EXPECT_EQ(shannon_info(0.0), 1.0);
    EXPECT_EQ(shannon_info(1.0), 1.0);
    EXPECT_NEAR(shannon_info(0.5), 0.0, 1e-15);
    EXPECT_THROW(shannon_info(-0.1), std::invalid_argument);
}

TEST(security, shannon_info_symmetry_and_slope) {
    for (double d = 0.01; d <= 0.99; d += 0.01) {
        EXPECT_NEAR(shannon_info(d), shannon_info(1 - d), 1e-12);
        const double h = 1e-6;
        const double numeric = (shannon_info(d + h) - shannon_info(d - h)) / (2 * h);
        EXPECT_NEAR(numeric, std::log2(d / (1 - d)), 1e-6);
    }
}

TEST(security, poisson_normalization) {
    for (double mu : {0.1, 1.0, 5.0, 10.0}) {
        double total = 0;
        for (unsigned n = 0; n < 200; ++n) {
            total += poisson_pmf(mu, n);
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        EXPECT_NEAR(poisson_nonvacuum(mu), 1 - poisson_pmf(mu, 0), 1e-15);
    }
}

TEST(security, pns_gain_bound_reference) {
    EXPECT_NEAR(pns_gain_bound(1.0, ChannelModel{12.5, 0.25}), 0.202, 0.002);
    for (double length = 0; length <= 1000; length += 1) {
        EXPECT_LT(pns_gain_bound(0.1, ChannelModel{length, 0.25}), 0.05);
    }
}

TEST(security, pns_gain_bound_plateau_and_monotonicity) {
    for (double mu : {0.1, 0.5, 1.0, 5.0}) {
        EXPECT_NEAR(pns_gain_bound(mu, ChannelModel{1e5, 0.25}), 1 - std::exp(-0.5 * mu), 1e-12);
        double previous = -1;
        for (double length = 0; length <= 300; length += 5) {
            const double g = pns_gain_bound(mu, ChannelModel{length, 0.25});
            EXPECT_GE(g, previous);
            previous = g;
        }
    }
    const ChannelModel ch{20, 0.25};
    double previous = -1;
    for (double mu = 0.05; mu <= 5; mu += 0.05) {
        const double g = pns_gain_bound(mu, ch);
        EXPECT_GE(g, previous);
        previous = g;
    }
}

TEST(security, conventional_crossover) {
    const auto grid = length_grid(400, 1);
    for (double mu : {0.1, 0.5, 1.0, 5.0}) {
        bool crossed = false;
        for (double length : grid) {
            const ChannelModel ch{length, 0.25};
            crossed |= conventional_pns_gain(mu, ch) > pns_gain_bound(mu, ch);
        }
        EXPECT_TRUE(crossed) << "mu=" << mu;
    }
}

TEST(security, gain_curves_layout) {
    const std::vector<double> mus{0.1, 0.5, 1.0, 5.0};
    const auto lengths = length_grid(200, 1);
    const std::vector<CurveFamily> families{CurveFamily::counterfactual, CurveFamily::conventional};
    const auto curves = eve_gain_curves(mus, lengths, families);
    ASSERT_EQ(curves.size(), 8u);
    EXPECT_EQ(curves[0].family, CurveFamily::counterfactual);
    EXPECT_EQ(curves[4].family, CurveFamily::conventional);
    EXPECT_EQ(curves[1].mu, 0.5);
    EXPECT_EQ(curves[0].points.size(), 201u);
    EXPECT_THROW(eve_gain_curves({}, lengths, families), std::invalid_argument);
}

TEST(security, length_grid) {
    EXPECT_EQ(length_grid(2, 1), (std::vector<double>{0, 1, 2}));
    EXPECT_EQ(length_grid(2.5, 1), (std::vector<double>{0, 1, 2, 2.5}));
    EXPECT_THROW(length_grid(1, 0), std::invalid_argument);
}

TEST(security, secret_rate_verdicts) {
    EXPECT_EQ(secret_rate(0.645, 0.2).verdict, Verdict::secure);
    EXPECT_NEAR(secret_rate(0.645, 0.2).rate, 0.445, 1e-12);
    EXPECT_EQ(secret_rate(0.0817, 0.2).verdict, Verdict::insecure);
    EXPECT_EQ(secret_rate(0.3, 0.3).verdict, Verdict::marginal);
}

TEST(security, security_report_table1) {
    const SecurityReport r = security_report(0.067, 1.0, ChannelModel{12.5, 0.25});
    EXPECT_NEAR(r.info_bob, 0.645, 0.002);
    EXPECT_NEAR(r.info_eve, 0.202, 0.002);
    EXPECT_EQ(r.verdict, Verdict::secure);
}

TEST(security, anomaly_verdicts) {
    MonitorCounters observed;
    observed.c1 = 100;
    observed.c2 = 410;
    EXPECT_EQ(detect_anomaly(observed), AnomalyVerdict::no_attack);
    MonitorCounters attacked;
    attacked.c1 = 5000;
    attacked.c2 = 10000;
    EXPECT_EQ(detect_anomaly(attacked), AnomalyVerdict::attack);
    EXPECT_EQ(detect_anomaly(MonitorCounters{}), AnomalyVerdict::insufficient_data);
    MonitorCounters vague;
    vague.c1 = 3;
    vague.c2 = 9;
    EXPECT_EQ(detect_anomaly(vague), AnomalyVerdict::insufficient_data);
}
