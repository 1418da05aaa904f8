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

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qcl/errors.hpp"
#include "qcl/experiments.hpp"
#include "qcl/parallel.hpp"
#include "qcl/rng.hpp"

namespace qcl {
namespace {

ExperimentConfig parse(const std::string& file, std::vector<ConfigEntry> flags = {}) {
    return build_config(parse_config_text(file, "test.cfg"), flags);
}

TEST(Config, FlagsOverrideFile) {
    const ExperimentConfig c = parse("experiment = owsg\nn = 2\nm = 6\n", {{"n", "3", "--n"}});
    EXPECT_EQ(c.n, 3);
    EXPECT_EQ(c.m, 6);
    EXPECT_EQ(c.seed, 0u);
}

TEST(Config, DefaultsAndComments) {
    const ExperimentConfig c = parse("# comment\n\nexperiment = hiding  # trailing\n");
    EXPECT_EQ(c.experiment, "hiding");
    EXPECT_EQ(c.generator, Family::BasisEmbed);
    EXPECT_EQ(c.n, 2);
    EXPECT_EQ(c.m, 4);
    EXPECT_EQ(c.t, 1u);
    EXPECT_EQ(c.trials, 1000u);
    EXPECT_EQ(c.format, "json");
    EXPECT_FALSE(c.threshold.has_value());
}

TEST(Config, ErrorsNameTheirOrigin) {
    auto message = [](const std::string& text, std::vector<ConfigEntry> flags = {}) {
        try {
            parse(text, flags);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("experiment = binding\nn = 2\nm = 2\n").find("test.cfg:3"), std::string::npos);
    EXPECT_NE(message("experiment = binding\ncolour = red\n").find("test.cfg:2: unknown key"), std::string::npos);
    EXPECT_NE(message("experiment = binding\nn = two\n").find("test.cfg:2: n"), std::string::npos);
    EXPECT_NE(message("experiment = binding\n", {{"trials", "-1", "--trials"}}).find("--trials"), std::string::npos);
    EXPECT_NE(message("experiment = binding\n", {{"format", "xml", "--format"}}).find("--format"), std::string::npos);
    EXPECT_NE(message("experiment binding\n").find("test.cfg:1"), std::string::npos);
    EXPECT_NE(message("n = 2\n").find("no experiment"), std::string::npos);
    EXPECT_NE(message("experiment = owsg\ngenerator = qrs\n").find("test.cfg:2"), std::string::npos);
}

TEST(Config, TextRoundTrip) {
    ExperimentConfig c = parse("experiment = sdcid\ngenerator = binary-phase\nn = 2\nm = 6\nthreshold = 0.1\nseed = 18446744073709551615\nancilla = true\n");
    const ExperimentConfig back = parse(to_config_text(c));
    EXPECT_EQ(back.experiment, c.experiment);
    EXPECT_EQ(back.generator, c.generator);
    EXPECT_EQ(back.seed, c.seed);
    EXPECT_EQ(back.threshold, c.threshold);
    EXPECT_TRUE(back.ancilla);
}

TEST(Config, MissingFileIsIoError) {
    EXPECT_THROW(read_config_file("/nonexistent/dir/x.cfg"), IoError);
}

TEST(Seeds, DeriveSeedIsStableAndCollisionFree) {
    EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
    // splitmix64 of (0 + 1 * golden ratio) from the reference implementation.
    EXPECT_EQ(derive_seed(0, 0), 0xE220A8397B1DCDAFULL);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1 << 21);
    for (std::uint64_t i = 0; i < 1000000; ++i) {
        ASSERT_TRUE(seen.insert(derive_seed(12345, i)).second) << i;
    }
}

TEST(Seeds, RngDrawsAreReproducible) {
    Rng a(5), b(5);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(a.uniform(), b.uniform());
        ASSERT_EQ(a.normal(), b.normal());
        ASSERT_EQ(a.below(7), b.below(7));
    }
    Rng c(5);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        ASSERT_LT(c.below(3), 3u);
    }
}

ExperimentReport sample_report() {
    ExperimentConfig c;
    c.experiment = "binding";
    ExperimentReport r = run_experiment(c);
    r.rows.push_back(ReportRow().set("text", "a,\"b\"").set("flag", false).set("count", 3).set("nan", std::nan("")));
    return r;
}

TEST(Report, BindingRow) {
    ExperimentConfig c;
    c.experiment = "binding";
    const ExperimentReport r = run_experiment(c);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(std::get<double>(*r.rows[0].find("F")), 0.25);
    EXPECT_EQ(std::get<double>(*r.rows[0].find("bound")), 0.25);
    EXPECT_EQ(std::get<double>(*r.rows[0].find("sum_bound")), 1.5);
    EXPECT_EQ(std::get<std::string>(*r.rows[0].find("verdict")), "pass");
    EXPECT_EQ(std::get<std::string>(*r.rows[0].find("formula")), "2^(n-m)");
    EXPECT_TRUE(r.all_pass());
}

TEST(Report, JsonRoundTrip) {
    const ExperimentReport r = sample_report();
    const auto j = nlohmann::json::parse(to_json(r));
    for (const char* key : {"config", "version", "rows", "verdicts", "seed_provenance", "timing"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["config"]["experiment"], "binding");
    EXPECT_EQ(j["config"]["seed"], 0);
    EXPECT_EQ(j["version"], std::string(version()));
    ASSERT_EQ(j["rows"].size(), r.rows.size());
    EXPECT_EQ(j["rows"][0]["F"].get<double>(), 0.25);
    EXPECT_EQ(j["rows"][1]["text"], "a,\"b\"");
    EXPECT_EQ(j["rows"][1]["flag"], false);
    EXPECT_EQ(j["rows"][1]["count"], 3);
    EXPECT_TRUE(j["rows"][1]["nan"].is_null());
    ASSERT_EQ(j["verdicts"].size(), r.verdicts.size());
    EXPECT_EQ(j["verdicts"][0]["pass"], true);
    EXPECT_FALSE(nlohmann::json::parse(to_json(r, false)).contains("timing"));
}

TEST(Report, DoublesRoundTripExactly) {
    ExperimentReport r;
    const double values[] = {0.1, 1.0 / 3.0, 2.5e-300, 6.02214076e23, -0.0};
    for (double v : values) r.rows.push_back(ReportRow().set("v", v));
    const auto j = nlohmann::json::parse(to_json(r));
    for (std::size_t i = 0; i < std::size(values); ++i) {
        EXPECT_EQ(j["rows"][i]["v"].get<double>(), values[i]);
    }
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}

TEST(Report, CsvShape) {
    const ExperimentReport r = sample_report();
    const std::string csv = to_csv(r);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.substr(0, 2), "F,");
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    EXPECT_EQ(lines, r.rows.size());
    EXPECT_NE(csv.find("\"a,\"\"b\"\"\""), std::string::npos);
}

TEST(Report, WriteErrors) {
    const ExperimentReport r = sample_report();
    EXPECT_THROW(write_report(r, "json", "/nonexistent/dir/out.json"), IoError);
    EXPECT_THROW(write_report(r, "xml", ""), ConfigError);
}

TEST(Experiments, RegistryAndErrors) {
    EXPECT_EQ(experiment_names().size(), 14u);
    for (const auto& name : experiment_names()) EXPECT_TRUE(is_experiment(name));
    ExperimentConfig c;
    c.experiment = "warp-drive";
    EXPECT_THROW(run_experiment(c), UnknownExperimentError);
    c.experiment = "binding";
    c.m = 2;
    EXPECT_THROW(run_experiment(c), ConfigError);
    c.experiment = "qotp-check";
    c.m = 7;
    EXPECT_THROW(run_experiment(c), CapExceededError);
}

TEST(Experiments, ThreadCountDoesNotChangeReports) {
    const std::vector<std::pair<std::string, std::size_t>> runs = {
        {"uhlmann-sweep", 40}, {"aqy-extract", 300}, {"owsg", 300}, {"sign-reduction", 300},
        {"classical-opening", 200}, {"sym-moment", 3000}, {"qotp-check", 20}};
    for (const auto& [name, trials] : runs) {
        ExperimentConfig c;
        c.experiment = name;
        c.trials = trials;
        c.seed = 99;
        if (name == "classical-opening") {
            c.n = 1;
            c.m = 2;
        }
        if (name == "sym-moment") {
            c.m = 2;
            c.t = 2;
        }
        set_thread_count(1);
        const std::string sequential = to_json(run_experiment(c), false);
        set_thread_count(8);
        const std::string parallel = to_json(run_experiment(c), false);
        const std::string again = to_json(run_experiment(c), false);
        set_thread_count(0);
        EXPECT_EQ(sequential, parallel) << name;
        EXPECT_EQ(parallel, again) << name;
    }
}

TEST(Experiments, SeedChangesMonteCarloRows) {
    ExperimentConfig c;
    c.experiment = "owsg";
    c.trials = 200;
    const std::string a = to_json(run_experiment(c), false);
    c.seed = 1;
    EXPECT_NE(a, to_json(run_experiment(c), false));
}

}  // namespace
}  // namespace qcl
