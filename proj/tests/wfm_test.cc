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

#include "ds3/wfm.h"

#include <algorithm>

#include "ds3/dilation.h"
#include "ds3/ribbon.h"
#include "gtest/gtest.h"
#include "oracle.h"

namespace ds3 {
namespace {

using oracle::Mat;

ComplexMatrix design_target() {
    return rank_limited_embedding(minimal_g_ribbon().matrix, 2.0, 1).unitary;
}

bool non_decreasing(const std::vector<double> &v) {
    for (size_t i = 1; i < v.size(); ++i) {
        if (v[i] < v[i - 1]) {
            return false;
        }
    }
    return true;
}

TEST(Wfm, ModeMixersAreUnitary) {
    const ComplexMatrix a = random_mode_mixer(8, 3);
    EXPECT_TRUE(is_unitary(a));
    EXPECT_EQ(max_abs_diff(a, random_mode_mixer(8, 3)), 0.0);
    EXPECT_GT(max_abs_diff(a, random_mode_mixer(8, 4)), 1e-3);
    EXPECT_THROW(random_mode_mixer(3, 1), std::invalid_argument);
    const ComplexMatrix f = dft_matrix(5);
    EXPECT_TRUE(is_unitary(f));
    for (int i = 0; i < 5; ++i) {
        for (int k = 0; k < 5; ++k) {
            EXPECT_NEAR(std::abs(f(i, k)), 1.0 / std::sqrt(5.0), 1e-15);
        }
    }
}

TEST(Wfm, TransferMatchesLoopProduct) {
    PhotonicCircuit c = make_circuit(6, 2);
    c.phases[0] = RealVector::LinSpaced(6, 0.1, 1.2);
    c.phases[1] = RealVector::LinSpaced(6, -0.7, 0.4);
    Mat p1 = oracle::zeros(6, 6);
    Mat p2 = oracle::zeros(6, 6);
    for (int i = 0; i < 6; ++i) {
        p1[i][i] = std::polar(1.0, c.phases[0](i));
        p2[i][i] = std::polar(1.0, c.phases[1](i));
    }
    const Mat expected = oracle::mul(oracle::mul(oracle::from_eigen(c.mixers[1]), p2),
                                     oracle::mul(oracle::from_eigen(c.mixers[0]), p1));
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(circuit_transfer(c)), expected), 1e-12);

    c.ports_out = {5, 4, 3, 2};
    const ComplexMatrix t = circuit_transfer(c);
    const ComplexMatrix b = embedded_block(c);
    for (int r = 0; r < 4; ++r) {
        for (int k = 0; k < 4; ++k) {
            EXPECT_EQ(b(r, k), t(c.ports_out[r], c.ports_in[k]));
        }
    }
}

TEST(Wfm, ValidateRejectsBadCircuits) {
    PhotonicCircuit c = make_circuit(6, 1);
    EXPECT_NO_THROW(validate(c));
    PhotonicCircuit dup = c;
    dup.ports_in = {0, 0, 1, 2};
    EXPECT_THROW(validate(dup), std::invalid_argument);
    PhotonicCircuit range = c;
    range.ports_out = {0, 1, 2, 6};
    EXPECT_THROW(validate(range), std::invalid_argument);
    PhotonicCircuit lossy = c;
    lossy.mixers[0] *= 2.0;
    EXPECT_THROW(validate(lossy), std::invalid_argument);
}

TEST(Wfm, BlockFidelityDefinition) {
    const ComplexMatrix u = design_target();
    EXPECT_NEAR(block_fidelity(u, u), 1.0, 1e-12);
    EXPECT_NEAR(block_fidelity(Complex(0.0, 3.0) * u, u), 1.0, 1e-12);
    const ComplexMatrix b = random_mode_mixer(4, 9);
    const Mat prod = oracle::mul(oracle::adjoint(oracle::from_eigen(u)), oracle::from_eigen(b));
    double fro = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
            fro += std::norm(b(i, k));
        }
    }
    EXPECT_NEAR(block_fidelity(b, u), std::abs(oracle::trace(prod)) / (2.0 * std::sqrt(fro)), 1e-12);
}

TEST(Wfm, OptimizationIsMonotoneAndImproves) {
    const ComplexMatrix target = design_target();
    const PhotonicCircuit start = make_circuit(16, 4);
    const WfmResult r = wfm_optimize(start, target, {60, 1e-12});
    ASSERT_GE(r.report.objective_trace.size(), 2u);
    EXPECT_TRUE(non_decreasing(r.report.objective_trace));
    EXPECT_GT(r.report.objective_trace.back(), r.report.objective_trace.front());
    const ComplexMatrix block = embedded_block(r.circuit);
    EXPECT_LT(max_abs_diff(block, r.report.realized_block), 1e-12);
    EXPECT_NEAR(r.report.objective_trace.back(), std::abs((target.adjoint() * block).trace()) / 4.0, 1e-12);
    EXPECT_NEAR(r.report.final_fidelity, block_fidelity(block, target), 1e-12);
    EXPECT_TRUE(is_unitary(circuit_transfer(r.circuit)));
}

TEST(Wfm, DesignSearchesPortPlacements) {
    WfmDesignConfig cfg;
    cfg.sweeps = 30;
    cfg.seed = 2;
    cfg.port_candidates = 3;
    const WfmDesign d = wfm_design(12, design_target(), cfg);
    ASSERT_EQ(d.candidate_ports.size(), 3u);
    ASSERT_EQ(d.candidate_fidelities.size(), 3u);
    EXPECT_EQ(d.candidate_ports[0], (std::array<int, 4>{0, 1, 2, 3}));
    EXPECT_EQ(d.best.report.final_fidelity,
              *std::max_element(d.candidate_fidelities.begin(), d.candidate_fidelities.end()));
}

TEST(Wfm, RandomBaselineIsSeeded) {
    const PhotonicCircuit c = make_circuit(12, 1);
    const std::vector<double> a = random_baseline(c, design_target(), 5, 3);
    EXPECT_EQ(a, random_baseline(c, design_target(), 5, 3));
    ASSERT_EQ(a.size(), 5u);
    for (double f : a) {
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
    }
}

TEST(Wfm, ExactEmbeddingCertifies) {
    const Dilation d = svd_dilation(minimal_g_ribbon().matrix, 2.0);
    // Signal ports plus one auxiliary mode of the 6 x 6 dilation.
    const PhotonicCircuit c = embed_unitary_circuit(8, d.enclosing);
    EXPECT_LT(max_abs_diff(embedded_block(c).topLeftCorner(3, 3), minimal_g_ribbon().matrix / 2.0), 1e-12);
    const Certification cert = certify_circuit(c, minimal_g_ribbon().matrix);
    EXPECT_GE(cert.fidelity, 0.999);
    EXPECT_GE(cert.purity, 0.999);
    EXPECT_GE(cert.direct_fidelity, 0.999);
}

}  // namespace
}  // namespace ds3
