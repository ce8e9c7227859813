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

#ifndef DS3_TOOLS_SCENARIOS_H
#define DS3_TOOLS_SCENARIOS_H

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ds3/serialize.h"

namespace ds3::tools {

inline constexpr uint64_t kDefaultSeed = 20240917;
inline constexpr const char *kSeedEnvVar = "DS3_SEED";

/// Raised for flag combinations the scenarios cannot run; the CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Check {
    std::string name;
    bool passed = false;
    Json measured;
    Json expected;
    double tolerance = 0.0;
};

struct ScenarioReport {
    std::string scenario;
    Json inputs = Json::object();
    std::map<std::string, ComplexMatrix> matrices;
    Json metrics = Json::object();
    std::vector<Check> checks;
    std::vector<std::string> flags;
    Json data = Json::object();
    std::map<std::string, std::string> csv_tables;
    uint64_t seed = kDefaultSeed;

    void add_check(const std::string &name, bool passed, Json measured, Json expected, double tolerance);
    /// |measured - expected| <= tol.
    void check_near(const std::string &name, double measured, double expected, double tol);
    /// max |entry difference| <= tol; the measured value recorded is that difference.
    void check_matrix(const std::string &name, const ComplexMatrix &measured, const ComplexMatrix &expected,
                      double tol);
    /// measured >= threshold.
    void check_at_least(const std::string &name, double measured, double threshold);
    void check_true(const std::string &name, bool value, const std::string &what);
    /// Appends every check of `other` with a "scenario/" prefix.
    void absorb(const ScenarioReport &other);

    bool passed() const;
    std::vector<std::string> failures() const;
    Json to_json() const;
    std::string to_csv() const;
};

/// Seed from the flag, else DS3_SEED, else kDefaultSeed. Throws UsageError for a malformed variable.
uint64_t resolve_seed(std::optional<uint64_t> flag);

/// fg, fgfg or fgfg-rev (identity is also accepted for tomography).
ComplexMatrix target_operator(const std::string &op);

ScenarioReport verify_fusion();
ScenarioReport verify_braiding();
ScenarioReport verify_transforms();

struct DilateOptions {
    std::string op = "fg";
    std::string method = "svd";
    uint64_t seed = kDefaultSeed;
};
ScenarioReport dilate(const DilateOptions &options);

struct QptOptions {
    std::string op = "fg";
    double noise = 0.0;
    long shots = 0;
    uint64_t seed = kDefaultSeed;
};
ScenarioReport qpt(const QptOptions &options);

struct ShotOptions {
    std::string op = "fg";
    std::vector<long> shots = {1000, 10000, 100000, 1000000};
    int seeds = 10;
    double threshold_at_max = 0.99;
    uint64_t seed = kDefaultSeed;
};
ScenarioReport shot_noise(const ShotOptions &options);

struct SystematicsOptions {
    std::string op = "fg";
    std::vector<double> epsilons = {0.0, 0.01, 0.02, 0.05, 0.1};
    int trials = 5;
    uint64_t seed = kDefaultSeed;
};
ScenarioReport systematics(const SystematicsOptions &options);

struct NoiseTableOptions {
    std::vector<double> grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<std::string> ops = {"identity", "fg", "fgfg", "fgfg-rev"};
    uint64_t seed = kDefaultSeed;
};
ScenarioReport noise_table(const NoiseTableOptions &options);

struct WfmOptions {
    int modes = 32;
    int sweeps = 200;
    uint64_t seed = kDefaultSeed;
    int port_candidates = 8;
    int baseline_draws = 10;
    double threshold = 0.9;
};
ScenarioReport wfm(const WfmOptions &options);

/// Seed list used by the full sweep for the WFM criterion.
const std::vector<uint64_t> &wfm_suite_seeds();

/// Every scenario above with default options; checks are prefixed with the scenario name.
ScenarioReport run_all(uint64_t seed);

}  // namespace ds3::tools

#endif
