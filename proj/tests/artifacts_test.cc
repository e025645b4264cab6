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


#include "cfqkd/artifacts.h"

#include <fstream>
#include <set>
#include <sstream>

#include "gtest/gtest.h"

#include "json.hpp"
#include "test_util.h"

using namespace cfqkd;

static std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

static std::filesystem::path fresh_dir(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / ("cfqkd_artifacts_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

static Scenario quick() {
    Scenario s = fixtures::table1_scenario();
    set_pulses(s, 100'000);
    return s;
}

TEST(artifacts, format_number_round_trips) {
    for (double x : {0.1, 1.0 / 3, 2.7e6, 1e-300, -5.5}) {
        EXPECT_EQ(std::stod(format_number(x)), x);
    }
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(artifacts, csv_and_json_tables) {
    const Table t{{"a", "b"}, {{"1", "2"}}};
    EXPECT_EQ(render_table(t, "00ff", 7, TableFormat::csv), "# fingerprint=00ff seed=7\na,b\n1,2\n");
    const auto doc = nlohmann::json::parse(render_table(t, "00ff", 7, TableFormat::json));
    EXPECT_EQ(doc["fingerprint"], "00ff");
    EXPECT_EQ(doc["rows"][0]["b"], "2");
}

TEST(artifacts, simulate_files_carry_fingerprint) {
    const Scenario s = quick();
    const RunArtifacts a = simulate_artifacts(s, TableFormat::csv);
    for (const char *name : {"summary.json", "counters.csv", "oracle_diff.csv", "scenario.cfg"}) {
        const ArtifactFile *f = a.find(name);
        ASSERT_NE(f, nullptr) << name;
        EXPECT_NE(f->content.find(fingerprint(s)), std::string::npos) << name;
    }
    const auto summary = nlohmann::json::parse(a.find("summary.json")->content);
    EXPECT_EQ(summary["n_pulses"], 100'000);
    EXPECT_TRUE(summary.contains("security"));
    EXPECT_FALSE(summary.contains("wall_time_s"));
    EXPECT_NE(a.find("counters.csv")->content.find("counter,value\n"), std::string::npos);
}

TEST(artifacts, emit_twice_is_byte_identical) {
    const Scenario s = quick();
    const auto d1 = fresh_dir("a");
    const auto d2 = fresh_dir("b");
    const auto files1 = emit(simulate_artifacts(s, TableFormat::csv, {1, 65536}), d1);
    const auto files2 = emit(simulate_artifacts(s, TableFormat::csv, {4, 65536}), d2);
    ASSERT_EQ(files1.size(), files2.size());
    for (size_t i = 0; i < files1.size(); ++i) {
        EXPECT_EQ(read_file(files1[i]), read_file(files2[i])) << files1[i];
    }
    const auto manifest = nlohmann::json::parse(read_file(d1 / "manifest.json"));
    EXPECT_EQ(manifest["fingerprint"], fingerprint(s));
    EXPECT_EQ(manifest["seed"], s.seed);
}

TEST(artifacts, emit_unwritable_directory) {
    const auto blocker = fresh_dir("blocker");
    {
        std::ofstream out(blocker);
        out << "x";
    }
    EXPECT_THROW(emit(simulate_artifacts(quick(), TableFormat::csv), blocker / "sub"), ArtifactIoError);
    std::filesystem::remove(blocker);
}

TEST(artifacts, fig2_has_four_mus_and_two_families) {
    const RunArtifacts a = run_preset("fig2", fixtures::preset_dir(), {}, TableFormat::csv);
    const std::string &csv = a.find("curves.csv")->content;
    std::set<std::pair<std::string, std::string>> seen;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    EXPECT_EQ(line, "family,mu,L_km,gain");
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string family, mu;
        std::getline(cells, family, ',');
        std::getline(cells, mu, ',');
        seen.insert({family, mu});
    }
    EXPECT_EQ(seen.size(), 8u);
}

TEST(artifacts, fig3_extinction) {
    const RunArtifacts a = run_preset("fig3", fixtures::preset_dir(), {}, TableFormat::csv);
    const std::string &csv = a.find("fig3_extinction.csv")->content;
    const auto pos = csv.find("extinction_ratio,");
    ASSERT_NE(pos, std::string::npos);
    const double ratio = std::stod(csv.substr(pos + 17));
    EXPECT_GT(ratio, 20);
    EXPECT_LT(ratio, 45);
}

TEST(artifacts, unknown_preset) {
    EXPECT_THROW(run_preset("fig9", fixtures::preset_dir(), {}, TableFormat::csv), ConfigError);
}

TEST(artifacts, overrides) {
    Scenario s = quick();
    apply_overrides(s, {uint64_t{9}, uint64_t{1234}});
    EXPECT_EQ(s.seed, 9u);
    EXPECT_EQ(s.n_pulses, 1234u);
    EXPECT_THROW(apply_overrides(s, {std::nullopt, uint64_t{0}}), ConfigError);
}

TEST(artifacts, oracle_and_curves_commands) {
    const Scenario s = quick();
    const RunArtifacts o = oracle_artifacts(s, TableFormat::json);
    ASSERT_NE(o.find("oracle.json"), nullptr);
    const auto doc = nlohmann::json::parse(o.find("oracle.json")->content);
    EXPECT_EQ(doc["fingerprint"], fingerprint(s));
    const RunArtifacts c = curves_artifacts(s, TableFormat::csv);
    ASSERT_NE(c.find("curves.csv"), nullptr);
}

TEST(artifacts, monitor_deviation_of_identical_counts) {
    const SimulationSummary r = simulate(quick());
    for (const auto &[name, z] : monitor_deviation(r.counters, r.counters)) {
        EXPECT_EQ(z, 0.0) << name;
    }
}
