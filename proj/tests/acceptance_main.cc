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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ds3/channel.h"
#include "ds3/dilation.h"
#include "ds3/noise.h"
#include "ds3/ribbon.h"
#include "ds3/tomography.h"
#include "oracle.h"
#include "scenarios.h"

namespace {

using ds3::ComplexMatrix;
using ds3::oracle::Mat;

struct Outcome {
    bool passed = false;
    std::string detail;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

Mat oracle_fg() {
    Mat m = ds3::oracle::zeros(3, 3);
    m[1][0] = 1.0;
    m[2][1] = ds3::oracle::w();
    m[0][2] = ds3::oracle::wb();
    return ds3::oracle::add(m, ds3::oracle::adjoint(m));
}

Outcome fusion_identity() {
    const auto start = std::chrono::steady_clock::now();
    const ComplexMatrix fg = ds3::minimal_g_ribbon().matrix;
    const ComplexMatrix fa = ds3::string_operator(ds3::AnyonLabel::A).matrix.topLeftCorner(3, 3);
    const ComplexMatrix fb = ds3::string_operator(ds3::AnyonLabel::B).matrix.topLeftCorner(3, 3);
    const double residual = (fg * fg - (fa + fb + fg)).norm();
    const double ms = elapsed_ms(start);
    const double oracle_gap = ds3::oracle::max_abs_diff(ds3::oracle::from_eigen(fg), oracle_fg());
    return {residual <= 1e-12 && ms < 1.0 && oracle_gap <= 1e-12,
            "residual " + fmt(residual) + ", " + fmt(ms) + " ms"};
}

Outcome exchange_derivation() {
    const ComplexMatrix rev = ds3::reversed_g_product().matrix;
    const auto w = ds3::oracle::w();
    const auto wb = ds3::oracle::wb();
    const Mat closed = ds3::oracle::add(ds3::oracle::scale(ds3::oracle::identity(3), 2.0 * wb), oracle_fg(), w);
    const Mat tabulated{{2.0 * wb, w, 1.0}, {w, 2.0 * wb, 1.0}, {wb, wb, 2.0 * wb}};
    const double d1 = ds3::oracle::max_abs_diff(ds3::oracle::from_eigen(rev), closed);
    const double d2 = ds3::oracle::max_abs_diff(ds3::oracle::from_eigen(rev), tabulated);
    const size_t terms = ds3::reversed_g_word().monomials.size();
    return {terms == 36 && d1 <= 1e-12 && d2 <= 1e-12,
            std::to_string(terms) + " terms, closed-form gap " + fmt(d1) + ", matrix gap " + fmt(d2)};
}

Outcome r_and_b_matrices() {
    const ComplexMatrix r =
        ds3::extract_r_matrix(ds3::decompose(ds3::forward_g_product()), ds3::decompose(ds3::reversed_g_product()));
    const auto w = ds3::oracle::w();
    const auto wb = ds3::oracle::wb();
    const double dr = std::max({std::abs(r(0, 0) - wb), std::abs(r(1, 1) - wb), std::abs(r(2, 2) - w)});
    const ComplexMatrix b = ds3::braiding_matrix(ds3::f_matrix_ggg(), r);
    const double c = std::cos(2.0 * std::numbers::pi / 3.0);
    const ds3::oracle::C is(0.0, std::sin(2.0 * std::numbers::pi / 3.0));
    const Mat expected_b{{c, is, 0.0}, {is, c, 0.0}, {0.0, 0.0, w}};
    const double db = ds3::oracle::max_abs_diff(ds3::oracle::from_eigen(b), expected_b);
    const ComplexMatrix bphi = ds3::braiding_matrix(ds3::f_matrix_phi(), ds3::r_matrix_phi());
    const double dphi = ds3::max_abs_diff(bphi, ComplexMatrix::Identity(3, 3));
    return {dr <= 1e-12 && db <= 1e-12 && dphi <= 1e-12,
            "R gap " + fmt(dr) + ", B_GG gap " + fmt(db) + ", B_PhiPhi gap " + fmt(dphi)};
}

Outcome basis_transforms() {
    const ds3::tools::ScenarioReport r = ds3::tools::verify_transforms();
    std::string failed;
    for (const std::string &f : r.failures()) {
        failed += " " + f;
    }
    return {r.passed(), std::to_string(r.checks.size()) + " term-set checks" + (failed.empty() ? "" : ", failed:" + failed)};
}

Outcome block_encoding() {
    const ds3::Dilation d = ds3::explicit_uf();
    const double unitarity = ds3::unitarity_residual(d.enclosing);
    const double block = ds3::oracle::max_abs_diff(ds3::oracle::from_eigen(d.signal_block()),
                                                   ds3::oracle::scale(oracle_fg(), 0.5));
    const ds3::SuccessReport sr = ds3::success_report(ds3::minimal_g_ribbon().matrix);
    const double r3 = 1.0 / std::sqrt(3.0);
    const double r2 = 1.0 / std::sqrt(2.0);
    const auto wb = ds3::oracle::wb();
    const std::vector<std::pair<std::vector<ds3::Complex>, double>> states{
        {{wb * r3, wb * r3, r3}, 1.0}, {{-wb * r2, 0.0, r2}, 0.25}, {{-r2, r2, 0.0}, 0.25}};
    double worst = std::max(std::abs(sr.p_min - 0.25), std::abs(sr.p_max - 1.0));
    for (const auto &[v, p] : states) {
        ds3::ComplexVector psi(3);
        psi << v[0], v[1], v[2];
        worst = std::max(worst, std::abs(ds3::success_probability(d, psi) - p));
    }
    return {unitarity <= 1e-9 && block <= 1e-12 && worst <= 1e-10,
            "unitarity " + fmt(unitarity) + ", block gap " + fmt(block) + ", success gap " + fmt(worst)};
}

double oracle_average(const ComplexMatrix &t) {
    const std::vector<double> s = ds3::oracle::singular_values(ds3::oracle::from_eigen(t));
    double sum = 0.0;
    for (double v : s) {
        sum += v * v;
    }
    return sum / (3.0 * s[0] * s[0]);
}

Outcome average_success() {
    const ComplexMatrix fg = ds3::minimal_g_ribbon().matrix;
    const double p1 = ds3::success_report(fg).p_avg;
    const double p2 = ds3::success_report(fg * fg).p_avg;
    const ds3::SuccessReport rev = ds3::success_report(ds3::reversed_g_product().matrix, 0.75);
    const double gap = std::abs(rev.p_avg - oracle_average(ds3::reversed_g_product().matrix));
    const bool ok = std::abs(p1 - 0.5) <= 1e-12 && std::abs(p2 - 0.375) <= 1e-12 && gap <= 1e-10 &&
                    rev.deviation.has_value();
    return {ok, "fg " + fmt(p1) + ", fgfg " + fmt(p2) + ", reversed " + fmt(rev.p_avg) + " (claimed 0.75, deviation " +
                    fmt(rev.deviation.value_or(0.0)) + ")"};
}

Outcome qpt_round_trip() {
    bool ok = true;
    std::string detail;
    for (const std::string op : {"fg", "fgfg", "fgfg-rev"}) {
        const ComplexMatrix t = ds3::tools::target_operator(op);
        const ds3::KrausProcess k{{t / ds3::spectral_norm(t)}};
        const auto start = std::chrono::steady_clock::now();
        const ds3::ProcessEstimate est = ds3::reconstruct(ds3::simulate_measurements(k, 1000.0, std::nullopt, 0));
        const double ms = elapsed_ms(start);
        const double fid = ds3::oracle::fidelity(ds3::oracle::choi_of(ds3::oracle::from_eigen(k.operators[0])),
                                                 ds3::oracle::from_eigen(est.choi.matrix));
        const double pur = ds3::purity(est.choi);
        bool monotone = true;
        for (size_t i = 1; i < est.objective_trace.size(); ++i) {
            monotone = monotone && est.objective_trace[i] <= est.objective_trace[i - 1];
        }
        ok = ok && fid >= 0.999 && pur >= 0.999 && monotone && ms < 30000.0;
        detail += op + " F=" + fmt(fid) + " P=" + fmt(pur) + " " + fmt(ms) + " ms; ";
    }
    return {ok, detail};
}

Outcome noise_monotonicity() {
    const std::vector<ds3::NamedTarget> targets{{"identity", ComplexMatrix::Identity(3, 3)},
                                                {"fg", ds3::tools::target_operator("fg")},
                                                {"fgfg", ds3::tools::target_operator("fgfg")},
                                                {"fgfg-rev", ds3::tools::target_operator("fgfg-rev")}};
    const std::vector<ds3::NoiseModel> grid = ds3::depolarizing_grid(11);
    const std::vector<ds3::BenchmarkRow> rows = ds3::noisy_benchmark(targets, grid, ds3::tools::kDefaultSeed);
    bool monotone = true;
    double purity_at_one = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].target == rows[i - 1].target) {
            monotone = monotone && rows[i].certified_fidelity <= rows[i - 1].certified_fidelity + 1e-9;
        }
        if (rows[i].target == "identity" && rows[i].p == 1.0) {
            purity_at_one = rows[i].purity;
        }
    }
    const double expected = 1.0 / 81.0;
    return {monotone && std::abs(purity_at_one - expected) <= 1e-6,
            std::string("certified fidelity monotone: ") + (monotone ? "yes" : "no") +
                ", fully depolarized Choi purity " + fmt(purity_at_one) + " vs required " + fmt(expected)};
}

Outcome shot_noise() {
    const ds3::tools::ScenarioReport r = ds3::tools::shot_noise({});
    return {r.passed(), "means " + r.metrics["mean_fidelities"].dump() + ", min at 1e6 " +
                            r.metrics["min_fidelity_at_max_shots"].dump()};
}

Outcome wfm_design() {
    bool ok = true;
    std::string detail;
    for (uint64_t seed : ds3::tools::wfm_suite_seeds()) {
        ds3::tools::WfmOptions opts;
        opts.seed = seed;
        const ds3::tools::ScenarioReport r = ds3::tools::wfm(opts);
        ok = ok && r.passed();
        detail += "seed " + std::to_string(seed) + " F=" + fmt(r.metrics["final_fidelity"].get<double>()) +
                  (r.passed() ? "" : " (failed)") + "; ";
    }
    return {ok, detail};
}

Outcome full_sweep(bool earlier_passed) {
    const std::string cmd = std::string("\"") + DS3SIM_PATH + "\" all > /dev/null 2>&1";
    const auto start = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    const double seconds = elapsed_ms(start) / 1000.0;
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code == 0 && seconds < 300.0 && earlier_passed,
            "exit " + std::to_string(code) + " in " + fmt(seconds) + " s; criteria 1-10 " +
                (earlier_passed ? "all pass" : "not all pass")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"fusion identity", fusion_identity},
        {"exchange derivation", exchange_derivation},
        {"R and B matrices", r_and_b_matrices},
        {"basis transforms", basis_transforms},
        {"block encoding", block_encoding},
        {"average success probabilities", average_success},
        {"QPT round trip", qpt_round_trip},
        {"noise monotonicity", noise_monotonicity},
        {"shot noise", shot_noise},
        {"WFM inverse design", wfm_design},
    };
    bool all_passed = true;
    int index = 1;
    for (const auto &[name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all_passed = all_passed && o.passed;
        std::cout << "criterion " << index++ << ": " << (o.passed ? "PASS" : "FAIL") << "  " << name << "  ("
                  << o.detail << ")" << std::endl;
    }
    const Outcome sweep = full_sweep(all_passed);
    std::cout << "criterion 11: " << (sweep.passed ? "PASS" : "FAIL") << "  full sweep  (" << sweep.detail << ")"
              << std::endl;
    return all_passed && sweep.passed ? 0 : 1;
}
