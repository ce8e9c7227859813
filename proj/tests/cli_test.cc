// Copyright 2026 The ds3sim Authors
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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "gtest/gtest.h"
#include "scenarios.h"

namespace ds3::tools {
namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string &args, const std::string &env = "") {
    const std::string cmd = env + " SOURCE_DATE_EPOCH=0 " + std::string(DS3SIM_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    RunResult r;
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

TEST(Scenarios, ResolveSeedPrecedence) {
    unsetenv(kSeedEnvVar);
    EXPECT_EQ(resolve_seed(std::nullopt), kDefaultSeed);
    setenv(kSeedEnvVar, "77", 1);
    EXPECT_EQ(resolve_seed(std::nullopt), 77u);
    EXPECT_EQ(resolve_seed(5u), 5u);
    setenv(kSeedEnvVar, "abc", 1);
    EXPECT_THROW(resolve_seed(std::nullopt), UsageError);
    unsetenv(kSeedEnvVar);
}

TEST(Scenarios, TargetOperatorNames) {
    EXPECT_EQ(target_operator("fg").rows(), 3);
    EXPECT_LT(max_abs_diff(target_operator("fgfg-rev"), reversed_g_product().matrix), 1e-15);
    EXPECT_THROW(target_operator("fh"), UsageError);
}

TEST(Scenarios, ReportBookkeeping) {
    ScenarioReport r;
    r.scenario = "demo";
    r.check_near("near", 1.0, 1.0 + 1e-13, 1e-12);
    r.check_at_least("floor", 0.5, 0.9);
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.failures(), std::vector<std::string>{"floor"});
    ScenarioReport all;
    all.absorb(r);
    EXPECT_EQ(all.checks[1].name, "demo/floor");
    const Json j = r.to_json();
    EXPECT_EQ(j["schema"], "v1");
    EXPECT_EQ(j["passed"], false);
    EXPECT_EQ(j["checks"].size(), 2u);
    EXPECT_TRUE(j["provenance"].contains("seed"));
}

TEST(Scenarios, VerifySuitesPass) {
    for (const ScenarioReport &r : {verify_fusion(), verify_braiding(), verify_transforms()}) {
        EXPECT_TRUE(r.passed()) << r.scenario << ": " << ::testing::PrintToString(r.failures());
    }
}

TEST(Scenarios, DilateRejectsExplicitForOtherOperators) {
    EXPECT_THROW(dilate({"fgfg", "explicit", kDefaultSeed}), UsageError);
    EXPECT_TRUE(dilate({"fg", "explicit", kDefaultSeed}).passed());
}

TEST(Cli, VerifyEmitsJsonReport) {
    const RunResult r = run("verify fusion");
    ASSERT_EQ(r.exit_code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["scenario"], "verify-fusion");
    EXPECT_EQ(j["passed"], true);
}

TEST(Cli, CsvOutput) {
    const RunResult r = run("--csv verify braiding");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("true"), std::string::npos);
    EXPECT_EQ(r.out.find('{'), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("").exit_code, 2);
    EXPECT_EQ(run("bogus").exit_code, 2);
    EXPECT_EQ(run("verify nothing").exit_code, 2);
    EXPECT_EQ(run("dilate --op fgfg --method explicit").exit_code, 2);
    EXPECT_EQ(run("qpt --noise 2").exit_code, 2);
    EXPECT_EQ(run("wfm --modes 4").exit_code, 2);
    EXPECT_EQ(run("verify fusion", "DS3_SEED=x").exit_code, 2);
}

// Report without the wall-clock runtime metric, which is the only field that varies between runs.
Json without_timing(const std::string &text) {
    Json j = Json::parse(text);
    j["metrics"].erase("seconds");
    return j;
}

TEST(Cli, SeededRunsAreReproducible) {
    const RunResult a = run("qpt --op fg --shots 1000 --seed 3");
    const RunResult b = run("qpt --op fg --shots 1000", "DS3_SEED=3");
    ASSERT_EQ(a.exit_code, 0);
    ASSERT_EQ(b.exit_code, 0);
    EXPECT_EQ(without_timing(a.out), without_timing(b.out));
    const RunResult c = run("qpt --op fg --shots 1000 --seed 4");
    EXPECT_NE(without_timing(a.out)["data"], without_timing(c.out)["data"]);
    EXPECT_EQ(Json::parse(a.out)["provenance"]["seed"], 3);
    EXPECT_EQ(Json::parse(a.out)["provenance"]["timestamp"], "1970-01-01T00:00:00Z");
}

TEST(Cli, NoiseTableGridOption) {
    const RunResult r = run("noise-table --grid 0,0.5,1 --ops identity");
    ASSERT_EQ(r.exit_code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["inputs"]["grid"].size(), 3u);
}

TEST(Cli, OutWritesFile) {
    const std::string path = ::testing::TempDir() + "ds3sim_out.json";
    std::remove(path.c_str());
    const RunResult r = run("--out " + path + " verify transforms");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.out.empty());
    FILE *f = std::fopen(path.c_str(), "r");
    ASSERT_NE(f, nullptr);
    std::fclose(f);
}

}  // namespace
}  // namespace ds3::tools
