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

#include "qcl/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcl/errors.hpp"
#include "qcl/experiments.hpp"

namespace qcl {

namespace {

constexpr std::array<std::string_view, 12> kKeys = {
    "experiment", "generator", "n",         "m",        "t",         "trials",
    "seed",       "out",       "format",    "threshold", "adversary", "ancilla"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const ConfigEntry& entry, const std::string& what) {
    throw ConfigError(entry.origin + ": " + entry.key + ": " + what);
}

template <typename T>
T parse_integer(const ConfigEntry& entry) {
    T value{};
    const char* begin = entry.value.data();
    const char* end = begin + entry.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || entry.value.empty()) {
        fail(entry, "expected a non-negative integer, got '" + entry.value + "'");
    }
    return value;
}

double parse_double(const ConfigEntry& entry) {
    double value = 0.0;
    const char* begin = entry.value.data();
    const char* end = begin + entry.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || entry.value.empty() || !std::isfinite(value)) {
        fail(entry, "expected a number, got '" + entry.value + "'");
    }
    return value;
}

bool parse_bool(const ConfigEntry& entry) {
    if (entry.value == "true" || entry.value == "1") return true;
    if (entry.value == "false" || entry.value == "0") return false;
    fail(entry, "expected true or false, got '" + entry.value + "'");
}

void require_known(const ConfigEntry& entry) {
    if (std::find(kKeys.begin(), kKeys.end(), entry.key) == kKeys.end()) {
        throw ConfigError(entry.origin + ": unknown key '" + entry.key + "'");
    }
}

}  // namespace

std::span<const std::string_view> config_keys() { return kKeys; }

std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source_name) {
    std::vector<ConfigEntry> entries;
    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto newline = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, newline == std::string_view::npos ? text.size() - pos : newline - pos);
        pos = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
        ++line_number;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string origin = std::string(source_name) + ":" + std::to_string(line_number);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(origin + ": expected key = value");
        }
        ConfigEntry entry{std::string(trim(line.substr(0, eq))),
                          std::string(trim(line.substr(eq + 1))), origin};
        if (entry.key.empty()) {
            throw ConfigError(origin + ": missing key");
        }
        require_known(entry);
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<ConfigEntry> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path);
}

ExperimentConfig build_config(std::span<const ConfigEntry> file,
                              std::span<const ConfigEntry> flags) {
    ExperimentConfig config;
    std::string m_origin = "default";

    auto apply = [&](const ConfigEntry& e) {
        require_known(e);
        if (e.key == "experiment") {
            config.experiment = e.value;
        } else if (e.key == "generator") {
            try {
                config.generator = parse_family(e.value);
            } catch (const ConfigError& err) {
                fail(e, err.what());
            }
        } else if (e.key == "n") {
            config.n = parse_integer<int>(e);
        } else if (e.key == "m") {
            config.m = parse_integer<int>(e);
            m_origin = e.origin;
        } else if (e.key == "t") {
            config.t = parse_integer<std::size_t>(e);
        } else if (e.key == "trials") {
            config.trials = parse_integer<std::size_t>(e);
            if (config.trials < 1) {
                fail(e, "must be at least 1");
            }
        } else if (e.key == "seed") {
            config.seed = parse_integer<std::uint64_t>(e);
        } else if (e.key == "out") {
            config.out = e.value;
        } else if (e.key == "format") {
            if (e.value != "json" && e.value != "csv") {
                fail(e, "expected json or csv, got '" + e.value + "'");
            }
            config.format = e.value;
        } else if (e.key == "threshold") {
            config.threshold = parse_double(e);
        } else if (e.key == "adversary") {
            config.adversary = e.value;
        } else if (e.key == "ancilla") {
            config.ancilla = parse_bool(e);
        }
    };
    for (const auto& e : file) apply(e);
    for (const auto& e : flags) apply(e);

    if (config.experiment.empty()) {
        throw ConfigError("no experiment given (set experiment=<name> or --experiment)");
    }
    if (config.n < 1 || config.n > 20) {
        throw ConfigError("n must be in [1, 20]");
    }
    if (config.m < 1 || config.m > 20) {
        throw ConfigError(m_origin + ": m must be in [1, 20]");
    }
    if (requires_expanding_generator(config.experiment) && config.m <= config.n) {
        throw ConfigError(m_origin + ": experiment '" + config.experiment +
                          "' needs m > n (got n=" + std::to_string(config.n) +
                          ", m=" + std::to_string(config.m) + ")");
    }
    return config;
}

std::string to_config_text(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "experiment = " << config.experiment << "\n"
        << "generator = " << family_name(config.generator) << "\n"
        << "n = " << config.n << "\n"
        << "m = " << config.m << "\n"
        << "t = " << config.t << "\n"
        << "trials = " << config.trials << "\n"
        << "seed = " << config.seed << "\n"
        << "format = " << config.format << "\n"
        << "adversary = " << config.adversary << "\n"
        << "ancilla = " << (config.ancilla ? "true" : "false") << "\n";
    if (!config.out.empty()) {
        out << "out = " << config.out << "\n";
    }
    if (config.threshold) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", *config.threshold);
        out << "threshold = " << buf << "\n";
    }
    return out.str();
}

}  // namespace qcl
