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

#include "ds3/ribbon.h"

#include <algorithm>

#include "gtest/gtest.h"
#include "oracle.h"

namespace ds3 {
namespace {

using G = GroupElement;
using oracle::Mat;

constexpr double kExact = 1e-12;

// |c><e| + w|c2><c| + wb|e><c2| plus its adjoint, written entry by entry.
Mat oracle_fg() {
    Mat m = oracle::zeros(3, 3);
    m[1][0] = 1.0;
    m[2][1] = oracle::w();
    m[0][2] = oracle::wb();
    return oracle::add(m, oracle::adjoint(m));
}

TEST(Ribbon, LAndTOperatorsActOnBasisStates) {
    for (G h : kAllElements) {
        const ComplexMatrix along = l_operator(h, Orientation::along).matrix;
        const ComplexMatrix away = l_operator(h, Orientation::away).matrix;
        for (G g : kAllElements) {
            EXPECT_EQ(along(index_of(multiply(h, g)), index_of(g)), Complex(1.0));
            EXPECT_EQ(away(index_of(multiply(g, inverse(h))), index_of(g)), Complex(1.0));
        }
        EXPECT_TRUE(is_unitary(along));
    }
    const ComplexMatrix t_away = t_operator(G::c, Orientation::away).matrix;
    EXPECT_EQ(t_away(index_of(G::c), index_of(G::c2)), Complex(1.0));
    EXPECT_EQ(t_operator(G::t, Orientation::along).matrix.sum(), Complex(1.0));
}

TEST(Ribbon, FhgIsFluxTimesProjector) {
    for (G h : kAllElements) {
        for (G g : kAllElements) {
            const ComplexMatrix f = f_hg(h, g).matrix;
            EXPECT_EQ(f.cwiseAbs().sum(), 1.0);
            EXPECT_EQ(f(index_of(multiply(h, g)), index_of(g)), Complex(1.0));
            EXPECT_LT(max_abs_diff(f, l_operator(h, Orientation::along).matrix *
                                         t_operator(g, Orientation::along).matrix),
                      kExact);
        }
    }
}

TEST(Ribbon, MinimalGRibbonMatchesOracle) {
    const ComplexMatrix fg = minimal_g_ribbon().matrix;
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(fg), oracle_fg()), kExact);
    const oracle::Eig e = oracle::jacobi_eig(oracle_fg());
    EXPECT_NEAR(e.values[0], -1.0, kExact);
    EXPECT_NEAR(e.values[1], -1.0, kExact);
    EXPECT_NEAR(e.values[2], 2.0, kExact);
}

TEST(Ribbon, FusionIdentityHolds) {
    const ComplexMatrix fg = minimal_g_ribbon().matrix;
    const ComplexMatrix fa = string_operator(AnyonLabel::A).matrix.topLeftCorner(3, 3);
    const ComplexMatrix fb = string_operator(AnyonLabel::B).matrix.topLeftCorner(3, 3);
    EXPECT_LE((fg * fg - (fa + fb + fg)).norm(), kExact);
    // Independent: fg^2 computed by loops equals 2 + fg.
    const Mat sq = oracle::mul(oracle_fg(), oracle_fg());
    EXPECT_LT(oracle::max_abs_diff(sq, oracle::add(oracle::scale(oracle::identity(3), 2.0), oracle_fg())), kExact);
}

TEST(Ribbon, FuseRecoversChannelCoefficients) {
    const QutritOperator fg = minimal_g_ribbon();
    const AnyonDecomposition gg = fuse(fg, fg);
    EXPECT_TRUE(gg.exact());
    EXPECT_NEAR(std::abs(gg.coeff_a - 1.0), 0.0, kExact);
    EXPECT_NEAR(std::abs(gg.coeff_b - 1.0), 0.0, kExact);
    EXPECT_NEAR(std::abs(gg.coeff_g - 1.0), 0.0, kExact);

    const QutritOperator fa{ComplexMatrix::Identity(3, 3)};
    const AnyonDecomposition ag = fuse(fa, fg);
    EXPECT_NEAR(std::abs(ag.coeff_g - 1.0), 0.0, kExact);
    EXPECT_NEAR(std::abs(ag.coeff_a), 0.0, kExact);

    // The qutrit restriction of F^B is the identity, so the minimum-norm split is (1/2, 1/2, 0).
    const QutritOperator fb{string_operator(AnyonLabel::B).matrix.topLeftCorner(3, 3)};
    const AnyonDecomposition bb = fuse(fb, fb);
    EXPECT_TRUE(bb.exact());
    EXPECT_NEAR(std::abs(bb.coeff_a - 0.5), 0.0, kExact);
    EXPECT_NEAR(std::abs(bb.coeff_b - 0.5), 0.0, kExact);
    EXPECT_NEAR(std::abs(bb.coeff_g), 0.0, kExact);
}

TEST(Ribbon, DecomposeReportsResidualOutsideSpan) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = 1.0;
    EXPECT_FALSE(decompose(QutritOperator{m}).exact());
}

TEST(Ribbon, StringOperatorsRejectOtherLabels) {
    EXPECT_THROW(string_operator(AnyonLabel::G), std::invalid_argument);
    EXPECT_EQ(parse_anyon(name_of(AnyonLabel::H)), AnyonLabel::H);
}

TEST(Ribbon, CanonicalizeMergesAndDropsTerms) {
    const RibbonSum sum{{1.0, "r", G::c, G::e}, {0.5, "r", G::e, G::e}, {-1.0, "r", G::c, G::e}, {0.25, "r", G::e, G::e}};
    const RibbonSum c = canonicalize(sum);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].h, G::e);
    EXPECT_NEAR(std::abs(c[0].coeff - 0.75), 0.0, 1e-15);
    EXPECT_EQ(on_ribbon(c, "x")[0].ribbon, "x");
}

TEST(Ribbon, AbelianTransformTermSets) {
    const RibbonSum f1 = abelian_transform(irrep(IrrepLabel::s3_trivial));
    const RibbonSum fl = abelian_transform(irrep(IrrepLabel::s3_sign));
    ASSERT_EQ(f1.size(), 6u);
    ASSERT_EQ(fl.size(), 6u);
    for (size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(f1[i].h, G::e);
        EXPECT_EQ(f1[i].g, kAllElements[i]);
        EXPECT_EQ(f1[i].coeff, Complex(1.0));
        EXPECT_EQ(fl[i].coeff, Complex(i < 3 ? 1.0 : -1.0));
    }
    EXPECT_LT(max_abs_diff(materialize(fl, SiteConvention::direct).matrix, string_operator(AnyonLabel::B).matrix), kExact);
    EXPECT_THROW(abelian_transform(irrep(IrrepLabel::s3_two)), std::invalid_argument);
}

TEST(Ribbon, NonabelianTransformCoefficients) {
    const RibbonSum phi = nonabelian_transform(conjugacy_class(G::e), irrep(IrrepLabel::s3_two));
    ASSERT_EQ(phi.size(), 3u);
    EXPECT_NEAR(std::abs(phi[0].coeff - 2.0), 0.0, kExact);
    EXPECT_NEAR(std::abs(phi[1].coeff + 1.0), 0.0, kExact);
    EXPECT_NEAR(std::abs(phi[2].coeff + 1.0), 0.0, kExact);

    const RibbonSum g = nonabelian_transform(conjugacy_class(G::c), irrep(IrrepLabel::z3_omega));
    const RibbonSum expected = g_ribbon_terms();
    ASSERT_EQ(g.size(), 6u);
    ASSERT_EQ(expected.size(), 6u);
    const std::vector<Complex> coeffs{1.0, oracle::w(), oracle::wb(), 1.0, oracle::wb(), oracle::w()};
    for (size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(g[i].h, expected[i].h);
        EXPECT_EQ(g[i].g, expected[i].g);
        EXPECT_NEAR(std::abs(g[i].coeff - coeffs[i]), 0.0, kExact);
        EXPECT_NEAR(std::abs(expected[i].coeff - coeffs[i]), 0.0, kExact);
    }
    EXPECT_THROW(nonabelian_transform(conjugacy_class(G::c), irrep(IrrepLabel::s3_two)), std::invalid_argument);
}

TEST(Ribbon, GRibbonCollapsesToMinimalRibbon) {
    const QuditOperator collapsed = materialize(g_ribbon_terms(), SiteConvention::hermitian_pair);
    EXPECT_TRUE(is_qutrit_supported(collapsed));
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(restrict_to_qutrit(collapsed).matrix), oracle_fg()), kExact);
    const QuditOperator direct = materialize(g_ribbon_terms(), SiteConvention::direct);
    EXPECT_GT(hermitian_asymmetry(direct.matrix), 0.1);
}

TEST(Ribbon, ExchangeRewriteConjugatesFlux) {
    const RibbonWord word = RibbonWord::product({{{1.0, "r2", G::c, G::t}}, {{1.0, "r1", G::c2, G::c}}});
    const RibbonWord out = exchange_rewrite(word);
    ASSERT_EQ(out.monomials.size(), 1u);
    const auto &f = out.monomials[0].factors;
    ASSERT_EQ(f.size(), 2u);
    // F^{k, l g^-1 h^-1 g}_{r1} F^{h,g}_{r2} with h = c, g = t, k = c2, l = c.
    const G new_g = multiply(G::c, multiply(inverse(G::t), multiply(inverse(G::c), G::t)));
    EXPECT_EQ(f[0], (RibbonFactor{"r1", G::c2, new_g}));
    EXPECT_EQ(f[1], (RibbonFactor{"r2", G::c, G::t}));
    const RibbonWord bad = RibbonWord::product({{{1.0, "r1", G::c, G::t}}, {{1.0, "r1", G::c2, G::c}}});
    EXPECT_THROW(exchange_rewrite(bad), std::invalid_argument);
}

TEST(Ribbon, ReversedWordHasThirtySixTerms) {
    const RibbonWord w = reversed_g_word();
    EXPECT_EQ(w.monomials.size(), 36u);
    EXPECT_NEAR(w.l1_mass(), 36.0, kExact);
    EXPECT_LE(canonicalize(w).monomials.size(), 36u);
}

TEST(Ribbon, ForwardAndReversedProducts) {
    const Complex w = oracle::w();
    const Complex wb = oracle::wb();
    const Mat fg = oracle_fg();
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(forward_g_product().matrix), oracle::mul(fg, fg)), kExact);
    const Mat closed = oracle::add(oracle::scale(oracle::identity(3), 2.0 * wb), fg, w);
    const ComplexMatrix rev = reversed_g_product().matrix;
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(rev), closed), kExact);
    const Mat tabulated{{2.0 * wb, w, 1.0}, {w, 2.0 * wb, 1.0}, {wb, wb, 2.0 * wb}};
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(rev), tabulated), kExact);
}

TEST(Ribbon, RMatrixAndBraiding) {
    const AnyonDecomposition fwd = decompose(forward_g_product());
    const AnyonDecomposition rev = decompose(reversed_g_product());
    const ComplexMatrix r = extract_r_matrix(fwd, rev);
    const Complex w = oracle::w();
    const Complex wb = oracle::wb();
    EXPECT_NEAR(std::abs(r(0, 0) - wb), 0.0, kExact);
    EXPECT_NEAR(std::abs(r(1, 1) - wb), 0.0, kExact);
    EXPECT_NEAR(std::abs(r(2, 2) - w), 0.0, kExact);
    EXPECT_LT(max_abs_diff(r, r_matrix_gg()), kExact);

    const ComplexMatrix b = braiding_matrix(f_matrix_ggg(), r);
    const double c = std::cos(2.0 * std::numbers::pi / 3.0);
    const Complex is(0.0, std::sin(2.0 * std::numbers::pi / 3.0));
    const Mat expected{{c, is, 0.0}, {is, c, 0.0}, {0.0, 0.0, w}};
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(b), expected), kExact);

    const ComplexMatrix bphi = braiding_matrix(f_matrix_phi(), r_matrix_phi());
    EXPECT_LT(max_abs_diff(bphi, ComplexMatrix::Identity(3, 3)), kExact);
}

TEST(Ribbon, BraidingRejectsBadInput) {
    EXPECT_THROW(braiding_matrix(2.0 * ComplexMatrix::Identity(3, 3), r_matrix_gg()), std::invalid_argument);
    EXPECT_THROW(braiding_matrix(f_matrix_ggg(), f_matrix_ggg()), std::invalid_argument);
    AnyonDecomposition zero{0.0, 1.0, 1.0, 0.0};
    EXPECT_THROW(extract_r_matrix(zero, zero), std::domain_error);
}

TEST(Ribbon, FusionTable) {
    const auto gg = fusion_lookup(AnyonLabel::G, AnyonLabel::G);
    EXPECT_EQ(gg, (std::vector<AnyonLabel>{AnyonLabel::A, AnyonLabel::B, AnyonLabel::G}));
    for (int a = 0; a < 8; ++a) {
        const auto la = static_cast<AnyonLabel>(a);
        EXPECT_EQ(fusion_lookup(AnyonLabel::A, la), std::vector<AnyonLabel>{la});
        for (int b = 0; b < 8; ++b) {
            EXPECT_EQ(fusion_lookup(la, static_cast<AnyonLabel>(b)), fusion_lookup(static_cast<AnyonLabel>(b), la));
        }
    }
}

}  // namespace
}  // namespace ds3
