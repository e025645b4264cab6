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


#include "cfqkd/mc_engine.h"

#include "gtest/gtest.h"

#include "test_util.h"

using namespace cfqkd;

static Scenario small(Scenario s, uint64_t pulses = 200'000) {
    set_pulses(s, pulses);
    return s;
}

TEST(mc_engine, rejects_zero_pulses) {
    Scenario s = fixtures::ideal_scenario();
    s.n_pulses = 0;
    EXPECT_THROW(simulate(s), std::invalid_argument);
}

TEST(mc_engine, runs_requested_pulses) {
    const Scenario s = small(fixtures::ideal_scenario(), 100'001);
    const SimulationSummary r = simulate(s);
    EXPECT_EQ(r.n_pulses, 100'001u);
    EXPECT_EQ(r.counters.pulses(), 100'001u);
    EXPECT_EQ(r.fingerprint, fingerprint(s));
}

TEST(mc_engine, lanes_do_not_change_results) {
    const Scenario s = small(fixtures::with_attack(fixtures::table1_scenario(), AttackType::vacuum, 0.3), 300'000);
    const SimulationSummary one = simulate(s, {1, 65536});
    for (unsigned lanes : {2u, 4u, 8u}) {
        EXPECT_TRUE(simulate(s, {lanes, 65536}).same_result(one)) << lanes;
    }
}

TEST(mc_engine, seed_changes_results) {
    Scenario s = small(fixtures::ideal_scenario());
    const SimulationSummary a = simulate(s);
    s.seed += 1;
    EXPECT_FALSE(simulate(s).same_result(a));
}

TEST(mc_engine, batches_merge_to_full_run) {
    const Scenario s = small(fixtures::ideal_scenario(), 250'000);
    const EngineOptions opts{1, 65536};
    const SimulationSummary full = simulate(s, opts);
    const SimulationSummary head = simulate_batches(s, 0, 2, opts);
    const SimulationSummary tail = simulate_batches(s, 2, 10, opts);
    EXPECT_TRUE(merge(head, tail).same_result(full));
    EXPECT_TRUE(merge(tail, head).same_result(full));
}

TEST(mc_engine, merge_identity_and_mismatch) {
    const Scenario s = small(fixtures::ideal_scenario(), 70'000);
    const SimulationSummary x = simulate(s);
    EXPECT_TRUE(merge(x, SimulationSummary::empty(s)).same_result(x));
    Scenario other = s;
    other.round.mu = 0.2;
    EXPECT_THROW(merge(x, simulate(other)), std::invalid_argument);
}

TEST(mc_engine, merge_is_associative) {
    const Scenario s = small(fixtures::ideal_scenario(), 200'000);
    const auto a = simulate_batches(s, 0, 1);
    const auto b = simulate_batches(s, 1, 1);
    const auto c = simulate_batches(s, 2, 2);
    EXPECT_TRUE(merge(merge(a, b), c).same_result(merge(a, merge(b, c))));
}

TEST(mc_engine, summary_invariants) {
    const Scenario s = small(fixtures::with_attack(fixtures::table1_scenario(), AttackType::vacuum, 1.0));
    const SimulationSummary r = simulate(s);
    const auto &c = r.counters;
    EXPECT_GE(c.detector_totals[0], c.c1 + c.c2);
    EXPECT_EQ(c.detector_totals[0], c.c1 + c.c2);
    EXPECT_EQ(c.detector_totals[2], c.c3 + c.c4);
    EXPECT_GE(c.detector_totals[1], c.c5 + c.c6 + c.sifted);
    EXPECT_LE(c.sifted_errors, c.sifted);
    ASSERT_TRUE(r.eve_error_rate().has_value());
    EXPECT_GE(*r.eve_error_rate(), 0.0);
    EXPECT_LE(*r.eve_error_rate(), 1.0);
    EXPECT_LE(*r.eve_informed_fraction(), 1.0);
    EXPECT_EQ(r.eve.attacked_rounds, r.n_pulses);
}

TEST(mc_engine, fixed_bits) {
    Scenario s = small(fixtures::ideal_scenario(), 10'000);
    s.bit_alice = BitChoice::one;
    s.bit_bob = BitChoice::zero;
    const SimulationSummary r = simulate(s);
    EXPECT_EQ(r.counters.pulses_diff, 10'000u);
    EXPECT_EQ(r.counters.c1, 0u);
}

TEST(mc_engine, pns_budget_warning) {
    Scenario s = small(fixtures::with_attack(fixtures::table1_scenario(), AttackType::pns), 1000);
    EXPECT_TRUE(simulate(s).warnings.empty());
    s.attack.tap_fraction = 0.9;
    EXPECT_EQ(simulate(s).warnings.size(), 1u);
}

TEST(mc_engine, throughput_gate) {
    // One lane, ideal scenario; the gate is half of 1e6 rounds per second.
    const Scenario s = small(fixtures::ideal_scenario(), 2'000'000);
    const SimulationSummary r = simulate(s, {1, 65536});
    RecordProperty("pulses_per_second", std::to_string(r.pulses_per_second));
    EXPECT_GE(r.pulses_per_second, 0.5e6);
}
