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


#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cfqkd/artifacts.h"
#include "cfqkd/mc_engine.h"
#include "cfqkd/oracle.h"
#include "cfqkd/security.h"
#include "test_util.h"

using namespace cfqkd;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double x, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

bool within(double x, double target, double tol) {
    return std::abs(x - target) <= tol;
}

/// True when `expected` lies inside the z = 3 Wilson interval of k successes in n trials.
bool wilson_contains(uint64_t k, uint64_t n, double expected) {
    return wilson_interval(k, n, 3.0).contains(expected);
}

Outcome shannon_values() {
    const double a = shannon_info(1.0 / 3);
    const double b = shannon_info(0.067);
    return {within(a, 0.0817, 0.0005) && within(b, 0.645, 0.002),
            "I(1/3)=" + fmt(a) + " (0.0817+-0.0005), I(0.067)=" + fmt(b) + " (0.645+-0.002)"};
}

Outcome pns_bound_values() {
    const double g = pns_gain_bound(1.0, ChannelModel{12.5, 0.25});
    double worst = 0;
    for (double length : length_grid(1000, 0.5)) {
        worst = std::max(worst, pns_gain_bound(0.1, ChannelModel{length, 0.25}));
    }
    double plateau_error = 0;
    for (double mu : {0.1, 0.5, 1.0, 5.0}) {
        plateau_error =
            std::max(plateau_error, std::abs(pns_gain_bound(mu, ChannelModel{1e6, 0.25}) - (1 - std::exp(-0.5 * mu))));
    }
    return {within(g, 0.202, 0.002) && worst < 0.05 && plateau_error <= 1e-9,
            "bound(mu=1,12.5km)=" + fmt(g) + ", max over L<=1000km at mu=0.1: " + fmt(worst) +
                ", plateau error " + fmt(plateau_error, 2)};
}

Outcome table1_reproduction() {
    const Scenario s = fixtures::table1_scenario();
    const auto start = std::chrono::steady_clock::now();
    const SimulationSummary r = simulate(s, {1, 65536});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto &d = r.counters.detector_totals;
    const auto rel = [](double x, double published) {
        return std::abs(x - published) <= 0.1 * published;
    };
    bool ok = rel(d[0], 15149) && rel(d[1], 2243) && rel(d[2], 10577) && rel(r.counters.sifted, 1121);
    std::ostringstream out;
    out << "seed " << s.seed << ": D1/D2/D3/sifted " << d[0] << "/" << d[1] << "/" << d[2] << "/" << r.counters.sifted;
    if (!r.report || !r.report->ratio_c3_c4) {
        return {false, out.str() + ", monitor statistics unavailable"};
    }
    const MonitorReport &m = *r.report;
    const double c12 = m.ratio_c1_c2.value;
    const double c34 = m.ratio_c3_c4->value;
    ok = ok && c12 >= 3.8 && c12 <= 4.4 && within(m.visibility.value, 0.964, 0.005) &&
         within(m.qber.value, 0.067, 0.007) && within(c34, 30.5, 1.5) && seconds < 60;
    out << ", C1:C2 1:" << fmt(c12) << " [3.8,4.4], V " << fmt(m.visibility.value) << " (0.964+-0.005), qber "
        << fmt(m.qber.value) << " (0.067+-0.007), C3:C4 " << fmt(c34) << " (30.5+-1.5), " << fmt(seconds, 3)
        << " s single lane";
    const OracleResult o = enumeration_oracle(s);
    out << "; expected C1:C2 1:" << fmt(o.ratio_c1_c2()) << ", V " << fmt(o.visibility()) << ", qber "
        << fmt(o.qber()) << ", C3:C4 " << fmt(o.ratio_c3_c4());
    return {ok, out.str()};
}

Outcome routing_law() {
    const Scenario ideal = fixtures::ideal_scenario(0.1);
    const OracleResult single = enumeration_oracle(ideal, OracleMode::single_photon);
    bool exact = true;
    for (const SettingExpectation &e : single.settings) {
        const std::array<double, 3> want =
            e.bit_alice == e.bit_bob ? std::array<double, 3>{0.25, 0.25, 0.5} : std::array<double, 3>{1, 0, 0};
        for (size_t k = 0; k < 3; ++k) {
            exact = exact && std::abs(e.detector[k] - want[k]) <= 1e-9;
        }
    }
    Scenario s = ideal;
    s.seed = 1004;
    set_pulses(s, 1'000'000);
    const SimulationSummary r = simulate(s, {8, 65536});
    const OracleResult poisson = enumeration_oracle(s);
    const auto &c = r.counters;
    const uint64_t n = r.n_pulses;
    const bool mc = wilson_contains(c.c1, n, poisson.per_pulse.c1) && wilson_contains(c.c2, n, poisson.per_pulse.c2) &&
                    wilson_contains(c.c3, n, poisson.per_pulse.c3) && wilson_contains(c.c4, n, poisson.per_pulse.c4) &&
                    wilson_contains(c.detector_totals[1], n, poisson.per_pulse.detector_totals[1]);
    const double same_d3_share = static_cast<double>(c.c3) / (c.c1 + c.c3 + c.c5 * 2);
    return {exact && mc, std::string("single-photon routing ") + (exact ? "exact" : "WRONG") +
                             "; MC at 1e6 pulses " + (mc ? "within" : "outside") +
                             " 3 sigma of the exact click rates; same-bit D3 share " + fmt(same_d3_share)};
}

Outcome vacuum_signatures() {
    const Scenario full = fixtures::with_attack(fixtures::ideal_scenario(1.0), AttackType::vacuum, 1.0);
    const OracleResult exact = enumeration_oracle(full, OracleMode::single_photon);
    const VacuumStats stats =
        enumerate_vacuum_stats(VacuumAttackModel::make(VacuumVariant::relational_capture, 1.0), full.round);
    const bool oracle_ok = std::abs(exact.ratio_c1_c2() - 2.0) <= 1e-12 &&
                           std::abs(exact.eve_error_rate() - 1.0 / 3) <= 1e-12 &&
                           stats.key_cases == std::array<bool, 4>{true, true, false, true};
    Scenario s = full;
    s.seed = 1005;
    set_pulses(s, 1'000'000);
    const SimulationSummary r = simulate(s, {8, 65536});
    const double ratio = r.report ? r.report->ratio_c1_c2.value : std::nan("");
    const double eve_error = r.eve_error_rate().value_or(std::nan(""));
    const bool mc_ok = within(ratio, 2.0, 0.05) && within(eve_error, 1.0 / 3, 0.01);
    const OracleResult partial = enumeration_oracle(
        fixtures::with_attack(fixtures::ideal_scenario(1.0), AttackType::vacuum, 0.2), OracleMode::single_photon);
    return {oracle_ok && mc_ok, "MC C1:C2 1:" + fmt(ratio) + ", Eve error " + fmt(eve_error) + "; exact 1:" +
                                    fmt(exact.ratio_c1_c2()) + ", " + fmt(exact.eve_error_rate()) +
                                    ", key cases {i,ii,iv}" + (oracle_ok ? "" : " MISMATCH") + "; f=0.2 gives 1:" +
                                    fmt(partial.ratio_c1_c2()) + " (published 1:3.3)"};
}

Outcome fourfold_errors() {
    bool ok = true;
    std::string detail;
    for (double v : {0.95, 0.96, 0.97, 0.98, 0.99}) {
        Scenario s = fixtures::ideal_scenario();
        s.round.visibility_noise_eps = (1 - v) / (1 + v);
        const OracleResult r = enumeration_oracle(s, OracleMode::single_photon);
        const double factor = r.qber() / ((1 - r.visibility()) / 2);
        ok = ok && factor >= 3.5 && factor <= 4.0 && std::abs(factor - 8 / (5 - 3 * v)) <= 1e-9;
        detail += (detail.empty() ? "" : ", ") + std::string("V=") + fmt(v, 2) + ": " + fmt(factor, 6);
    }
    return {ok, "qber/((1-V)/2) " + detail};
}

Outcome pns_invisibility() {
    Scenario base = fixtures::table1_scenario();
    set_pulses(base, 1'000'000);
    base.seed = 1007;
    Scenario attacked = fixtures::with_attack(base, AttackType::pns);
    attacked.attack.lossless_replacement = true;
    attacked.seed = 2007;
    const SimulationSummary clean = simulate(base, {8, 65536});
    const SimulationSummary r = simulate(attacked, {8, 65536});
    double worst = 0;
    std::string worst_name;
    for (const auto &[name, z] : monitor_deviation(r.counters, clean.counters)) {
        if (std::abs(z) > worst) {
            worst = std::abs(z);
            worst_name = name;
        }
    }
    const double informed = r.eve_informed_fraction().value_or(std::nan(""));
    const double bound = pns_gain_bound(base.round.mu, base.round.channel);
    const double coherent = enumeration_oracle(attacked).eve_informed_fraction();
    const bool invisible = worst < 3;
    const bool matches = within(informed, bound, 0.01);
    return {invisible && matches, std::string("monitor max |z| ") + fmt(worst, 3) + " (" + worst_name + ")" +
                                      (invisible ? " invisible" : " VISIBLE") + "; Eve informed " + fmt(informed) +
                                      " vs bound " + fmt(bound) + " (+-0.01), exact coherent-state value " +
                                      fmt(coherent)};
}

Outcome oracle_matrix() {
    int checked = 0;
    std::vector<std::string> misses;
    for (int k = 0; k < 8; ++k) {
        Scenario s = k < 4 ? fixtures::ideal_scenario(1.0) : fixtures::table1_scenario();
        const char *names[] = {"none", "vacuum0.2", "vacuum1", "pns"};
        switch (k % 4) {
            case 1:
                s = fixtures::with_attack(s, AttackType::vacuum, 0.2);
                break;
            case 2:
                s = fixtures::with_attack(s, AttackType::vacuum, 1.0);
                break;
            case 3:
                s = fixtures::with_attack(s, AttackType::pns);
                break;
            default:
                break;
        }
        set_pulses(s, 1'000'000);
        s.seed = 1080 + k;
        const SimulationSummary r = simulate(s, {8, 65536});
        const auto counts = named_counts(r.counters, r.eve);
        const auto expected = named_expectations(enumeration_oracle(s).per_pulse);
        for (size_t i = 0; i < counts.size(); ++i) {
            ++checked;
            if (!wilson_contains(counts[i].second, r.n_pulses, expected[i].per_pulse)) {
                misses.push_back(std::string(k < 4 ? "ideal/" : "table1/") + names[k % 4] + ":" + counts[i].first);
            }
        }
    }
    std::string detail = std::to_string(checked - misses.size()) + "/" + std::to_string(checked) +
                         " counters inside the 3-sigma Wilson interval";
    for (const auto &m : misses) {
        detail += " " + m;
    }
    return {misses.empty(), detail};
}

Outcome determinism() {
    Scenario s = fixtures::with_attack(fixtures::table1_scenario(), AttackType::vacuum, 0.2);
    set_pulses(s, 400'000);
    s.seed = 1009;
    const RunArtifacts ref = simulate_artifacts(s, TableFormat::csv, {1, 65536});
    bool same = true;
    for (unsigned lanes : {4u, 8u}) {
        const RunArtifacts other = simulate_artifacts(s, TableFormat::csv, {lanes, 65536});
        same = same && other.files.size() == ref.files.size();
        for (size_t i = 0; same && i < ref.files.size(); ++i) {
            same = other.files[i].name == ref.files[i].name && other.files[i].content == ref.files[i].content;
        }
    }
    return {same, std::to_string(ref.files.size()) + " artifact files " +
                      (same ? "byte-identical" : "DIFFER") + " across 1, 4, 8 lanes"};
}

Outcome conservation() {
    std::mt19937_64 rng(1010);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0, 1);
    auto random_mode = [&] {
        Mode m;
        m.jones << std::complex<double>(g(rng), g(rng)), std::complex<double>(g(rng), g(rng));
        return m;
    };
    const int n = 100'000;
    int failures = 0;
    auto check = [&](double out, double in) {
        if (std::abs(out - in) > 1e-12 * std::max(in, 1e-300)) {
            ++failures;
        }
    };
    for (int k = 0; k < n; ++k) {
        const Mode a = random_mode();
        const Mode b = random_mode();
        switch (k % 6) {
            case 0: {
                const auto [o1, o2] = combine_bs(a, b);
                check(o1.mean_photons() + o2.mean_photons(), a.mean_photons() + b.mean_photons());
                break;
            }
            case 1: {
                const auto [o1, o2] = split_bs(a);
                check(o1.mean_photons() + o2.mean_photons(), a.mean_photons());
                break;
            }
            case 2: {
                const auto out = apply_pbs(a, PbsExtinction{1 + 1000 * u(rng), 1 + 1000 * u(rng)});
                check(out.transmitted.mean_photons() + out.reflected.mean_photons(), a.mean_photons());
                break;
            }
            case 3: {
                const Rotation r = k % 2 ? Rotation::deg90 : Rotation::deg0;
                check(rotate(a, r).mean_photons(), a.mean_photons());
                const JonesMatrix<double> m = rotation_matrix<double>(r);
                if (!(m.adjoint() * m).isIdentity(1e-12)) {
                    ++failures;
                }
                break;
            }
            case 4: {
                check(phase_shift(a, 2 * std::numbers::pi * u(rng), PhaseTarget::vertical).mean_photons(),
                      a.mean_photons());
                check(exchange_polarizations(a).mean_photons(), a.mean_photons());
                break;
            }
            default: {
                // The splitter as a 2x2 matrix acting on the (a, b) amplitudes must be unitary.
                Eigen::Matrix2d bs;
                bs << 1, 1, 1, -1;
                bs /= std::sqrt(2.0);
                if (!(bs.transpose() * bs).isIdentity(1e-12)) {
                    ++failures;
                }
                const Mode back = counter_rotate(rotate(a, Rotation::deg90), Rotation::deg90);
                check((back.jones - a.jones).squaredNorm() + a.mean_photons(), a.mean_photons());
                break;
            }
        }
    }
    return {failures == 0, std::to_string(n) + " randomized component checks, " + std::to_string(failures) +
                               " failures at 1e-12 relative tolerance"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"shannon information values", shannon_values},
        {"PNS gain bound values", pns_bound_values},
        {"Table 1 reproduction", table1_reproduction},
        {"routing law", routing_law},
        {"vacuum attack signatures", vacuum_signatures},
        {"fourfold-error property", fourfold_errors},
        {"PNS invisibility", pns_invisibility},
        {"oracle-MC equivalence matrix", oracle_matrix},
        {"determinism across lanes", determinism},
        {"conservation suite", conservation},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome v;
        try {
            v = criteria[i].second();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("criterion %zu %s: %s | %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
