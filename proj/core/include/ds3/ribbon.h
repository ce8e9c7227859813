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

#ifndef DS3_RIBBON_H
#define DS3_RIBBON_H

#include <string>
#include <vector>

#include "ds3/group.h"
#include "ds3/numerics.h"

namespace ds3 {

/// 6x6 operator on a single S3 qudit, basis ordered as kAllElements.
struct QuditOperator {
    ComplexMatrix matrix;
};

/// 3x3 operator on the {|e>, |c>, |c2>} block of a qudit.
struct QutritOperator {
    ComplexMatrix matrix;
};

inline constexpr int kQuditDim = 6;
inline constexpr int kQutritDim = 3;

enum class Orientation { along, away };

/// along: sum_g |hg><g|. away: sum_g |g h^-1><g|.
QuditOperator l_operator(GroupElement h, Orientation orientation);
/// along: |g><g|. away: |g><g^-1|.
QuditOperator t_operator(GroupElement g, Orientation orientation);
/// F^{h,g} = L^h T^g with both triangles facing along the edge, i.e. |hg><g|.
QuditOperator f_hg(GroupElement h, GroupElement g);

/// Top-left 3x3 block.
QutritOperator restrict_to_qutrit(const QuditOperator &op);
/// True when every entry outside the {e, c, c2} block is below tol.
bool is_qutrit_supported(const QuditOperator &op, double tol = 1e-12);

enum class AnyonLabel { A, B, C, D, E, F, G, H };

std::string_view name_of(AnyonLabel a);
AnyonLabel parse_anyon(std::string_view name);

/// F^A = 1 and F^B = diag(1,1,1,-1,-1,-1). Throws std::invalid_argument for other labels.
QuditOperator string_operator(AnyonLabel label);

/// A single weighted group ribbon operator coeff * F^{h,g}_ribbon.
struct RibbonTerm {
    Complex coeff;
    std::string ribbon;
    GroupElement h;
    GroupElement g;
};

/// A formal sum of RibbonTerms.
using RibbonSum = std::vector<RibbonTerm>;

/// Merges terms with equal (ribbon, h, g) keys, drops |coeff| below drop_tol, and sorts by key.
RibbonSum canonicalize(const RibbonSum &sum, double drop_tol = 1e-14);

/// Relabels every term onto `ribbon`.
RibbonSum on_ribbon(RibbonSum sum, const std::string &ribbon);

struct RibbonFactor {
    std::string ribbon;
    GroupElement h;
    GroupElement g;

    bool operator==(const RibbonFactor &) const = default;
};

/// coeff * F_{factors[0]} F_{factors[1]} ... (leftmost factor applied last).
struct RibbonMonomial {
    Complex coeff;
    std::vector<RibbonFactor> factors;
};

/// A formal complex-weighted sum of ordered ribbon-operator products.
struct RibbonWord {
    std::vector<RibbonMonomial> monomials;

    /// Expands the product sums[0] * sums[1] * ... into monomials.
    static RibbonWord product(const std::vector<RibbonSum> &sums);

    /// Sum of |coeff| over monomials.
    double l1_mass() const;
};

/// Merges monomials with identical factor lists and sorts them.
RibbonWord canonicalize(const RibbonWord &word, double drop_tol = 1e-14);

/// How a group ribbon operator becomes a matrix on one site.
enum class SiteConvention {
    /// F^{h,g} -> |hg><g| for every flux.
    direct,
    /// F^{h,g} -> (F^{h^-1,g})^dagger when h is the second member of an inverse pair (c2 -> c),
    /// which is how hermiticity is imposed when both triangles share one qudit.
    hermitian_pair,
};

ComplexMatrix materialize(const RibbonTerm &term, SiteConvention convention);
QuditOperator materialize(const RibbonSum &sum, SiteConvention convention);
/// Every ribbon label is collapsed onto the same site; factors multiply in the written order.
QuditOperator materialize(const RibbonWord &word, SiteConvention convention);

/// sum_g conj(chi(g)) F^{e,g}. Throws std::invalid_argument unless chi is one-dimensional on all of S3.
RibbonSum abelian_transform(const Irrep &chi, const std::string &ribbon = "rho");

/// sum_i sum_{n in N_C} conj(chi_R(n)) F^{c_i^-1, q_i n q_i^-1}, irrep indices traced.
/// The n_R/|N_C| prefactor is only applied when `normalized` is set.
/// Throws std::invalid_argument when r is not an irrep of class.normalizer.
RibbonSum nonabelian_transform(const ConjugacyClassData &cls, const Irrep &r, const std::string &ribbon = "rho",
                               bool normalized = false);

/// The G ribbon on the lattice: F^{c,e} + w F^{c,c} + w̄ F^{c,c2} + F^{c2,e} + w̄ F^{c2,c} + w F^{c2,c2}.
RibbonSum g_ribbon_terms(const std::string &ribbon = "rho");

/// F^G_{rho0} = |c><e| + w|c2><c| + w̄|e><c2| + h.c.
QutritOperator minimal_g_ribbon();

struct AnyonDecomposition {
    Complex coeff_a;
    Complex coeff_b;
    Complex coeff_g;
    double residual_norm;

    bool exact(double tol = 1e-10) const { return residual_norm <= tol; }
};

/// Decomposes a*b onto span{F^A, F^B, F^G} inside the qudit space (F^G padded with zeros).
/// The qutrit product has no support on the t-block, which pins coeff_a == coeff_b.
AnyonDecomposition fuse(const QutritOperator &a, const QutritOperator &b);
/// Same decomposition applied to an already-formed product.
AnyonDecomposition decompose(const QutritOperator &product);

/// Rewrites F^{h,g}_{r2} F^{k,l}_{r1} -> F^{k, l g^-1 h^-1 g}_{r1} F^{h,g}_{r2} monomial by monomial.
/// Throws std::invalid_argument unless every monomial has exactly two factors on distinct ribbons.
RibbonWord exchange_rewrite(const RibbonWord &word);

/// The 36-term F^G_{rho2} F^G_{rho1} after exchange_rewrite, before site collapse.
RibbonWord reversed_g_word();

/// F^G_{rho1} F^G_{rho2} collapsed onto rho0 (no rewriting).
QutritOperator forward_g_product();
/// F^G_{rho2} F^G_{rho1} via exchange_rewrite and collapse onto rho0.
QutritOperator reversed_g_product();

/// diag(reversed_i / forward_i) in the (A, B, G) basis.
/// Throws std::domain_error if a forward coefficient vanishes.
ComplexMatrix extract_r_matrix(const AnyonDecomposition &forward, const AnyonDecomposition &reversed);

/// F R^2 F^-1. Throws std::invalid_argument unless f is unitary, r diagonal, and both square of equal size.
ComplexMatrix braiding_matrix(const ComplexMatrix &f, const ComplexMatrix &r);

/// F^G_{GGG}, R^{GG} in the (A, B, G) basis.
ComplexMatrix f_matrix_ggg();
ComplexMatrix r_matrix_gg();
/// F^Phi_{PhiPhiPhi}, R_{PhiPhi} in the (1, Lambda, Phi) basis.
ComplexMatrix f_matrix_phi();
ComplexMatrix r_matrix_phi();

/// Fusion outcomes a x b as a sorted multiset.
std::vector<AnyonLabel> fusion_lookup(AnyonLabel a, AnyonLabel b);

}  // namespace ds3

#endif
