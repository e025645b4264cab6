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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace cfqkd {

std::optional<double> SimulationSummary::eve_informed_fraction() const {
    if (counters.sifted == 0) {
        return std::nullopt;
    }
    return static_cast<double>(eve.sifted_informed) / static_cast<double>(counters.sifted);
}

std::optional<double> SimulationSummary::eve_error_rate() const {
    if (eve.sifted_with_guess == 0) {
        return std::nullopt;
    }
    return static_cast<double>(eve.sifted_wrong) / static_cast<double>(eve.sifted_with_guess);
}

SimulationSummary SimulationSummary::empty(const Scenario &s) {
    SimulationSummary out;
    out.fingerprint = cfqkd::fingerprint(s);
    out.seed = s.seed;
    const AttackModel attack = build_attack(s);
    if (const auto *pns = std::get_if<PnsAttackModel>(&attack)) {
        if (auto warning = pns->budget_warning()) {
            out.warnings.push_back(*warning);
        }
    }
    return out;
}

bool SimulationSummary::same_result(const SimulationSummary &o) const {
    return fingerprint == o.fingerprint && seed == o.seed && n_pulses == o.n_pulses && counters == o.counters &&
           eve == o.eve;
}

namespace {

int choose_bit(BitChoice c, RoundRng &rng) {
    switch (c) {
        case BitChoice::zero:
            return 0;
        case BitChoice::one:
            return 1;
        case BitChoice::random:
            break;
    }
    return draw_bit(rng);
}

struct BatchResult {
    MonitorCounters counters;
    EveTally eve;
};

BatchResult run_batch(const Scenario &s, const AttackModel &attack, uint64_t index, uint64_t rounds) {
    BatchResult out;
    RoundRng rng = substream(s.seed, index);
    for (uint64_t r = 0; r < rounds; ++r) {
        const int a = choose_bit(s.bit_alice, rng);
        const int b = choose_bit(s.bit_bob, rng);
        RoundOutcome outcome = run_round(s.round, a, b, attack, rng);
        sift(outcome, rng);
        out.counters = accumulate(out.counters, outcome);
        out.eve = accumulate(out.eve, outcome);
    }
    return out;
}

void finish(SimulationSummary &summary) {
    summary.report = try_monitor_report(summary.counters);
}

}  // namespace

SimulationSummary simulate_batches(const Scenario &s, uint64_t first, uint64_t count, const EngineOptions &options) {
    s.validate();
    if (options.batch_size == 0) {
        throw std::invalid_argument("batch_size must be > 0");
    }
    const auto start = std::chrono::steady_clock::now();
    const AttackModel attack = build_attack(s);
    const uint64_t total_batches = (s.n_pulses + options.batch_size - 1) / options.batch_size;
    const uint64_t begin = std::min(first, total_batches);
    const uint64_t end = begin + std::min(count, total_batches - begin);

    std::vector<BatchResult> results(end - begin);
    std::atomic<uint64_t> next{begin};
    auto worker = [&] {
        for (uint64_t i = next++; i < end; i = next++) {
            const uint64_t rounds = std::min(options.batch_size, s.n_pulses - i * options.batch_size);
            results[i - begin] = run_batch(s, attack, i, rounds);
        }
    };
    const unsigned lanes = std::max(1u, std::min<unsigned>(options.lanes, static_cast<unsigned>(results.size())));
    if (lanes <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(lanes);
        for (unsigned t = 0; t < lanes; ++t) {
            pool.emplace_back(worker);
        }
    }

    SimulationSummary summary = SimulationSummary::empty(s);
    for (const BatchResult &r : results) {
        summary.counters += r.counters;
        summary.eve += r.eve;
    }
    summary.n_pulses = summary.counters.pulses();
    finish(summary);
    summary.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    summary.pulses_per_second = summary.wall_time_s > 0 ? summary.n_pulses / summary.wall_time_s : 0;
    return summary;
}

SimulationSummary simulate(const Scenario &s, const EngineOptions &options) {
    return simulate_batches(s, 0, UINT64_MAX, options);
}

SimulationSummary merge(const SimulationSummary &a, const SimulationSummary &b) {
    if (a.fingerprint != b.fingerprint || a.seed != b.seed) {
        throw std::invalid_argument("cannot merge summaries of different scenarios");
    }
    SimulationSummary out = a;
    out.counters += b.counters;
    out.eve += b.eve;
    out.n_pulses = a.n_pulses + b.n_pulses;
    for (const auto &w : b.warnings) {
        if (std::find(out.warnings.begin(), out.warnings.end(), w) == out.warnings.end()) {
            out.warnings.push_back(w);
        }
    }
    out.wall_time_s = a.wall_time_s + b.wall_time_s;
    out.pulses_per_second = out.wall_time_s > 0 ? out.n_pulses / out.wall_time_s : 0;
    finish(out);
    return out;
}

}  // namespace cfqkd
