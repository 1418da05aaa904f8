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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcl/generators.hpp"

namespace qcl {

/// Everything an experiment run depends on.
///
/// Defaults: generator basis-embed, n = 2, m = 4, t = 1, trials = 1000,
/// seed = 0, format json, output to stdout, adversary "all", no ancilla.
struct ExperimentConfig {
    std::string experiment;
    Family generator = Family::BasisEmbed;
    int n = 2;
    int m = 4;
    std::size_t t = 1;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::string out;  ///< empty means stdout
    std::string format = "json";
    std::optional<double> threshold;
    std::string adversary = "all";
    bool ancilla = false;

    GeneratorSpec generator_spec() const { return GeneratorSpec{generator, n, m, ancilla}; }
};

/// One key=value assignment and where it came from ("run.cfg:3", "--n").
struct ConfigEntry {
    std::string key;
    std::string value;
    std::string origin;
};

/// Keys accepted in files and as flags.
std::span<const std::string_view> config_keys();

/// Parses flat `key = value` text. Blank lines and `#` comments are skipped.
/// Throws ConfigError naming the line for malformed lines and unknown keys.
std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source_name);

/// Reads and parses a config file; throws IoError when it cannot be read.
std::vector<ConfigEntry> read_config_file(const std::string& path);

/// Applies `file` then `flags` (later entries win) over the defaults and
/// validates the result. Errors name the origin of the offending entry.
ExperimentConfig build_config(std::span<const ConfigEntry> file,
                              std::span<const ConfigEntry> flags);

/// Flat text that parses back to the same config.
std::string to_config_text(const ExperimentConfig& config);

}  // namespace qcl
