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


#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "cfqkd/artifacts.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Options {
    std::string config;
    std::string preset;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> pulses;
    std::string out;
    std::string format = "csv";
    unsigned lanes = 0;
    std::string preset_dir = CFQKD_PRESET_DIR;
};

void add_common(CLI::App *cmd, Options &o, bool simulation) {
    cmd->add_option("--out", o.out, "Directory to write the artifact files into");
    cmd->add_option("--format", o.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", o.seed, "Override the scenario seed");
    if (simulation) {
        cmd->add_option("--pulses", o.pulses, "Override the number of pulses");
        cmd->add_option("--lanes", o.lanes, "Worker threads (0 = hardware concurrency); results do not depend on it");
    } else {
        cmd->add_option("--pulses", o.pulses, "Accepted for uniformity; enumeration does not sample pulses");
    }
}

cfqkd::RunArtifacts run(const std::string &command, const Options &o) {
    const cfqkd::TableFormat format = o.format == "json" ? cfqkd::TableFormat::json : cfqkd::TableFormat::csv;
    cfqkd::EngineOptions engine;
    engine.lanes = o.lanes == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.lanes;
    const cfqkd::RunOverrides overrides{o.seed, o.pulses};
    if (command == "preset") {
        return cfqkd::run_preset(o.preset, o.preset_dir, overrides, format, engine);
    }
    cfqkd::Scenario s = cfqkd::load_config(o.config);
    cfqkd::apply_overrides(s, overrides);
    if (command == "simulate") {
        return cfqkd::simulate_artifacts(s, format, engine);
    }
    if (command == "oracle") {
        return cfqkd::oracle_artifacts(s, format);
    }
    return cfqkd::curves_artifacts(s, format);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulator and security analyzer for counterfactual quantum key distribution"};
    app.require_subcommand(1);
    Options o;

    CLI::App *simulate = app.add_subcommand("simulate", "Monte Carlo run of a scenario file");
    simulate->add_option("config", o.config, "Scenario file")->required();
    add_common(simulate, o, true);

    CLI::App *preset = app.add_subcommand("preset", "Run a named reproduction preset");
    preset->add_option("name", o.preset, "table1, fig2, fig3, vacuum or pns")->required();
    preset->add_option("--preset-dir", o.preset_dir, "Directory holding the preset scenario files");
    add_common(preset, o, true);

    CLI::App *oracle = app.add_subcommand("oracle", "Exact expectations of a scenario by enumeration");
    oracle->add_option("config", o.config, "Scenario file")->required();
    add_common(oracle, o, false);

    CLI::App *curves = app.add_subcommand("curves", "Eve's gain curves over channel length");
    curves->add_option("config", o.config, "Scenario file")->required();
    add_common(curves, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const cfqkd::RunArtifacts artifacts = run(command, o);
        std::cout << "fingerprint " << artifacts.fingerprint << "  seed " << artifacts.seed << "\n" << artifacts.report;
        if (!o.out.empty()) {
            for (const auto &path : cfqkd::emit(artifacts, o.out)) {
                std::cout << "wrote " << path.string() << "\n";
            }
        } else if (command == "oracle" || command == "curves") {
            std::cout << artifacts.files.front().content;
        }
        return 0;
    } catch (const cfqkd::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
