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

// Drives the qcl executable. QCL_CLI_PATH is set by the build.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + QCL_CLI_PATH + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Raw bytes with the trailing timing member cut out.
std::string without_timing(const std::string& json) {
    const auto at = json.find(",\n  \"timing\"");
    EXPECT_NE(at, std::string::npos);
    return json.substr(0, at);
}

class Cli : public ::testing::Test {
  protected:
    fs::path dir = fs::temp_directory_path() / ("qcl_cli_" + std::to_string(::getpid()));
    void SetUp() override { fs::create_directories(dir); }
    void TearDown() override { fs::remove_all(dir); }
    std::string out(const std::string& name) const { return (dir / name).string(); }
};

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("run --experiment binding --n 2 --m 4"), 0);
    EXPECT_EQ(run("run --experiment warp-drive"), 3);
    EXPECT_EQ(run("run --experiment binding --n 2 --m 2"), 2);
    EXPECT_EQ(run("run --experiment binding --generator nope"), 2);
    EXPECT_EQ(run("run --experiment binding --bogus-flag 1"), 2);
    EXPECT_EQ(run("run --experiment qotp-check --m 8"), 4);
    EXPECT_EQ(run("run --experiment binding --out /nonexistent/dir/r.json"), 5);
    EXPECT_EQ(run("run --config /nonexistent/dir/r.cfg"), 5);
    // F = 0.25 at (2,4) is above the 0.1 threshold.
    EXPECT_EQ(run("run --experiment sdcid --n 2 --m 4"), 1);
    EXPECT_EQ(run("list"), 0);
}

TEST_F(Cli, ConfigFileAndFlags) {
    {
        std::ofstream cfg(dir / "r.cfg");
        cfg << "experiment = binding\nn = 1\nm = 3\n";
    }
    ASSERT_EQ(run("run --config " + out("r.cfg") + " --n 2 --out " + out("r.json")), 0);
    const auto j = nlohmann::json::parse(slurp(out("r.json")));
    EXPECT_EQ(j["config"]["n"], 2);
    EXPECT_EQ(j["config"]["m"], 3);
    EXPECT_NEAR(j["rows"][0]["F"].get<double>(), 0.5, 1e-12);
}

TEST_F(Cli, CsvMatchesJsonRowCount) {
    ASSERT_EQ(run("run --experiment owsg --trials 50 --out " + out("r.json")), 0);
    ASSERT_EQ(run("run --experiment owsg --trials 50 --format csv --out " + out("r.csv")), 0);
    const auto j = nlohmann::json::parse(slurp(out("r.json")));
    std::istringstream csv(slurp(out("r.csv")));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(csv, line)) ++lines;
    EXPECT_EQ(lines, j["rows"].size() + 1);
}

TEST_F(Cli, ByteIdenticalAcrossThreadCounts) {
    // The output path is echoed in the report, so every run writes the same file.
    for (const std::string exp : {"uhlmann-sweep", "sign-onetime", "haar-bound"}) {
        const std::string args = "run --experiment " + exp + " --trials 200 --seed 7 --out " + out("r.json");
        std::vector<std::string> runs;
        for (const char* env : {"QCL_THREADS=1", "QCL_THREADS=16", "QCL_THREADS=16"}) {
            ASSERT_LE(run(args, env), 1);
            runs.push_back(without_timing(slurp(out("r.json"))));
        }
        EXPECT_EQ(runs[0], runs[1]) << exp;
        EXPECT_EQ(runs[1], runs[2]) << exp;
    }
}

}  // namespace
