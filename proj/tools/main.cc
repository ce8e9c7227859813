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

// ds3sim command-line scenario runner.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scenarios.h"

namespace {

using ds3::tools::ScenarioReport;

int emit(const ScenarioReport &report, bool csv, const std::string &out_path) {
    const std::string text = csv ? report.to_csv() : report.to_json().dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(out_path);
        if (!file) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        file << text;
    }
    const auto failures = report.failures();
    if (failures.empty()) {
        return 0;
    }
    std::cerr << "FAILED checks:";
    for (const std::string &name : failures) {
        std::cerr << ' ' << name;
    }
    std::cerr << "\n";
    return 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ds3sim: D(S3) anyon braiding, block encoding, tomography and photonic design scenarios"};
    app.require_subcommand(1);

    std::optional<uint64_t> seed_flag;
    bool csv = false;
    std::string out_path;
    app.add_option("--seed", seed_flag, "Random seed (falls back to $DS3_SEED, then a fixed default)");
    app.add_flag("--csv", csv, "Emit flat CSV tables instead of JSON");
    app.add_option("--out", out_path, "Write the report to this file instead of stdout");

    auto *verify = app.add_subcommand("verify", "Algebraic identity suites");
    std::string suite;
    verify->add_option("suite", suite, "fusion | braiding | transforms")
        ->required()
        ->check(CLI::IsMember({"fusion", "braiding", "transforms"}));

    ds3::tools::DilateOptions dilate_opts;
    auto *dilate = app.add_subcommand("dilate", "Block encoding and success probabilities");
    dilate->add_option("--op", dilate_opts.op, "fg | fgfg | fgfg-rev")
        ->check(CLI::IsMember({"fg", "fgfg", "fgfg-rev"}));
    dilate->add_option("--method", dilate_opts.method, "svd | minimal | explicit")
        ->check(CLI::IsMember({"svd", "minimal", "explicit"}));

    ds3::tools::QptOptions qpt_opts;
    auto *qpt = app.add_subcommand("qpt", "Simulated process tomography round trip");
    qpt->add_option("--op", qpt_opts.op, "fg | fgfg | fgfg-rev | identity")
        ->check(CLI::IsMember({"fg", "fgfg", "fgfg-rev", "identity"}));
    qpt->add_option("--noise", qpt_opts.noise, "Depolarizing strength in [0, 1]")->check(CLI::Range(0.0, 1.0));
    qpt->add_option("--shots", qpt_opts.shots, "Poisson shots per setting (0 = exact)")->check(CLI::NonNegativeNumber);
    qpt->add_option("--seed", seed_flag, "Random seed");

    ds3::tools::NoiseTableOptions noise_opts;
    auto *noise = app.add_subcommand("noise-table", "Purity and fidelity under depolarizing noise");
    noise->add_option("--grid", noise_opts.grid, "Comma-separated noise strengths")->delimiter(',');
    noise->add_option("--ops", noise_opts.ops, "Comma-separated targets")->delimiter(',');

    ds3::tools::WfmOptions wfm_opts;
    auto *wfm = app.add_subcommand("wfm", "Wavefront-matching design of the photonic circuit");
    wfm->add_option("--modes", wfm_opts.modes, "Number of optical modes")->check(CLI::Range(6, 1024));
    wfm->add_option("--sweeps", wfm_opts.sweeps, "Maximum sweeps")->check(CLI::PositiveNumber);
    wfm->add_option("--seed", seed_flag, "Random seed");
    wfm->add_option("--candidates", wfm_opts.port_candidates, "Output-port placements tried")
        ->check(CLI::PositiveNumber);

    auto *all = app.add_subcommand("all", "Run every scenario with default settings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        const uint64_t seed = ds3::tools::resolve_seed(seed_flag);
        ScenarioReport report;
        if (verify->parsed()) {
            if (suite == "fusion") {
                report = ds3::tools::verify_fusion();
            } else if (suite == "braiding") {
                report = ds3::tools::verify_braiding();
            } else {
                report = ds3::tools::verify_transforms();
            }
            report.seed = seed;
        } else if (dilate->parsed()) {
            dilate_opts.seed = seed;
            report = ds3::tools::dilate(dilate_opts);
        } else if (qpt->parsed()) {
            qpt_opts.seed = seed;
            report = ds3::tools::qpt(qpt_opts);
        } else if (noise->parsed()) {
            noise_opts.seed = seed;
            report = ds3::tools::noise_table(noise_opts);
        } else if (wfm->parsed()) {
            wfm_opts.seed = seed;
            report = ds3::tools::wfm(wfm_opts);
        } else if (all->parsed()) {
            report = ds3::tools::run_all(seed);
        }
        return emit(report, csv, out_path);
    } catch (const ds3::tools::UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
