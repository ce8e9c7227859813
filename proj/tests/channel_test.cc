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

#include "ds3/channel.h"

#include <random>

#include "ds3/dilation.h"
#include "ds3/ribbon.h"
#include "gtest/gtest.h"
#include "oracle.h"

namespace ds3 {
namespace {

using oracle::Mat;

ComplexMatrix fg_scaled() {
    return minimal_g_ribbon().matrix / 2.0;
}

ComplexMatrix random_density(int d, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            a(i, k) = Complex(n(rng), n(rng));
        }
    }
    const ComplexMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

TEST(Channel, RequireConsistentRejectsBadShapes) {
    EXPECT_THROW(require_consistent(KrausProcess{}), std::invalid_argument);
    KrausProcess k{{ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(2, 2)}};
    EXPECT_THROW(require_consistent(k), std::invalid_argument);
    KrausProcess ok{{ComplexMatrix::Identity(3, 2)}};
    EXPECT_NO_THROW(require_consistent(ok));
    EXPECT_EQ(ok.dim_in(), 2);
    EXPECT_EQ(ok.dim_out(), 3);
}

TEST(Channel, TransmissionOfScaledRibbon) {
    const KrausProcess k{{fg_scaled()}};
    EXPECT_NEAR(max_transmission(k), 1.0, 1e-12);
    EXPECT_TRUE(is_non_trace_increasing(k));
    EXPECT_FALSE(is_non_trace_increasing(KrausProcess{{minimal_g_ribbon().matrix}}));
}

TEST(Channel, ApplyProcessMatchesLoopProduct) {
    const ComplexMatrix rho = random_density(3, 1);
    const ComplexMatrix out = apply_process(KrausProcess{{fg_scaled()}}, rho);
    const Mat k = oracle::from_eigen(fg_scaled());
    const Mat expected = oracle::mul(oracle::mul(k, oracle::from_eigen(rho)), oracle::adjoint(k));
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(out), expected), 1e-14);
}

TEST(Channel, ChoiMatchesLoopConstruction) {
    const ChoiState c = kraus_to_choi(KrausProcess{{fg_scaled()}});
    EXPECT_TRUE(c.normalized);
    EXPECT_EQ(c.dim_out, 3);
    EXPECT_EQ(c.dim_in, 3);
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(c.matrix), oracle::choi_of(oracle::from_eigen(fg_scaled()))),
              1e-14);
    EXPECT_NO_THROW(validate(c));
    EXPECT_NEAR(purity(c), 1.0, 1e-12);
}

TEST(Channel, UnnormalizedChoiHasTransmissionTrace) {
    const ChoiState c = kraus_to_choi(KrausProcess{{fg_scaled()}}, false);
    // Tr = Tr[K^dagger K] / d_in = (4 + 1 + 1) / 4 / 3.
    EXPECT_NEAR(c.matrix.trace().real(), 0.5, 1e-12);
    EXPECT_THROW(purity(c), std::invalid_argument);
}

TEST(Channel, ChoiToKrausRoundTrip) {
    const double p = 0.3;
    const ComplexMatrix z = matrix_from_rows({{1.0, 0.0, 0.0}, {0.0, omega(), 0.0}, {0.0, 0.0, omega_bar()}});
    const KrausProcess k{{std::sqrt(1 - p) * fg_scaled(), std::sqrt(p) * z * fg_scaled()}};
    const ChoiState c = kraus_to_choi(k, false);
    const KrausProcess back = choi_to_kraus(c);
    EXPECT_EQ(back.operators.size(), 2u);
    const ChoiState again = kraus_to_choi(back, false);
    EXPECT_LT(max_abs_diff(again.matrix, c.matrix), 1e-12);
    const std::vector<double> w = kraus_weights(back);
    EXPECT_GE(w[0], w[1]);
}

TEST(Channel, ChoiToKrausRejectsNegativeSpectrum) {
    ChoiState c{-ComplexMatrix::Identity(9, 9), 3, 3, false};
    EXPECT_THROW(choi_to_kraus(c), std::invalid_argument);
    EXPECT_THROW(validate(c), std::invalid_argument);
}

TEST(Channel, FidelityMatchesOracle) {
    const ChoiState a = kraus_to_choi(KrausProcess{{fg_scaled()}});
    const ComplexMatrix mixed = 0.7 * a.matrix + 0.3 * ComplexMatrix::Identity(9, 9) / 9.0;
    const ChoiState b{mixed, 3, 3, true};
    const double expected = oracle::fidelity(oracle::from_eigen(a.matrix), oracle::from_eigen(b.matrix));
    EXPECT_NEAR(fidelity(a, b), expected, 1e-9);
    // For a pure a, F = <psi|b|psi> = 0.7 + 0.3 / 9.
    EXPECT_NEAR(expected, 0.7 + 0.3 / 9.0, 1e-9);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-9);
}

TEST(Channel, PostselectedProcessFromDilation) {
    const Dilation d = svd_dilation(minimal_g_ribbon().matrix, 2.0);
    const KrausProcess k = postselected_process(d, 0, 0);
    ASSERT_EQ(k.operators.size(), 1u);
    EXPECT_LT(max_abs_diff(k.operators[0], fg_scaled()), 1e-12);
    const KrausProcess off = postselected_process(d, 0, 1);
    EXPECT_LT(max_abs_diff(off.operators[0], d.enclosing.block(3, 0, 3, 3)), 1e-15);
    EXPECT_THROW(postselected_process(d, 2, 0), std::out_of_range);
}

}  // namespace
}  // namespace ds3
