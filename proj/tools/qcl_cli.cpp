// Copyright 2026 The qclab Authors.
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

// qcl: run one experiment and write its report.
//
// Exit status: 0 all verdicts pass, 1 some verdict failed, 2 bad
// configuration, 3 unknown experiment, 4 size cap exceeded, 5 IO error,
// 6 anything else.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcl/config.hpp"
#include "qcl/errors.hpp"
#include "qcl/experiments.hpp"
#include "qcl/report.hpp"

namespace {

enum Exit : int {
    kPass = 0,
    kVerdictFail = 1,
    kConfig = 2,
    kUnknownExperiment = 3,
    kCap = 4,
    kIo = 5,
    kOther = 6,
};

int run(const std::optional<std::string>& config_path,
        const std::map<std::string, std::optional<std::string>>& flags, bool quiet) {
    std::vector<qcl::ConfigEntry> file;
    if (config_path) {
        file = qcl::read_config_file(*config_path);
    }
    std::vector<qcl::ConfigEntry> given;
    for (const auto& key : qcl::config_keys()) {
        const auto it = flags.find(std::string(key));
        if (it != flags.end() && it->second) {
            given.push_back({std::string(key), *it->second, "--" + std::string(key)});
        }
    }
    const qcl::ExperimentConfig config = qcl::build_config(file, given);
    const qcl::ExperimentReport report = qcl::run_experiment(config);
    qcl::write_report(report, config.format, config.out);
    if (!quiet) {
        for (const auto& v : report.verdicts) {
            std::cerr << (v.pass ? "PASS " : "FAIL ") << v.name;
            if (!v.detail.empty()) std::cerr << " (" << v.detail << ")";
            std::cerr << "\n";
        }
    }
    return report.all_pass() ? kPass : kVerdictFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcl: finite-size checks for quantum commitments, one-way state generators "
                 "and one-time signatures"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qcl::version()));

    CLI::App* list = app.add_subcommand("list", "List registered experiments");
    CLI::App* run_cmd = app.add_subcommand("run", "Run one experiment and write its report");

    std::map<std::string, std::optional<std::string>> flags;
    std::optional<std::string> config_path;
    bool quiet = false;
    const std::map<std::string, std::string> help = {
        {"experiment", "Experiment name (see `qcl list`)"},
        {"generator", "basis-embed | binary-phase | prg-embed"},
        {"n", "Key length in bits (default 2)"},
        {"m", "Output qubits (default 4)"},
        {"t", "Copies given to adversaries, or moment order (default 1)"},
        {"trials", "Monte-Carlo trials (default 1000)"},
        {"seed", "Unsigned 64-bit base seed (default 0)"},
        {"out", "Report path (default stdout)"},
        {"format", "json | csv (default json)"},
        {"threshold", "Fidelity threshold for sdcid (default 0.1)"},
        {"adversary", "Adversary strategy or `all` (default all)"},
        {"ancilla", "Attach the ancilla register: true | false"},
    };
    for (const auto& key : qcl::config_keys()) {
        const std::string k(key);
        flags[k];
        run_cmd->add_option("--" + k, flags[k], help.count(k) ? help.at(k) : "");
    }
    run_cmd->add_option("--config", config_path, "Flat key = value config file; flags override it");
    run_cmd->add_flag("--quiet,-q", quiet, "Do not print verdict lines on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfig;
    }

    if (list->parsed()) {
        for (const auto& name : qcl::experiment_names()) {
            std::cout << name << "\n";
        }
        return kPass;
    }

    try {
        return run(config_path, flags, quiet);
    } catch (const qcl::UnknownExperimentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnknownExperiment;
    } catch (const qcl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const qcl::DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return kConfig;
    } catch (const qcl::CapExceededError& e) {
        std::cerr << "size cap exceeded: " << e.what() << "\n";
        return kCap;
    } catch (const qcl::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
}
