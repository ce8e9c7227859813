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
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace ds3 {

namespace {

using G = GroupElement;

ComplexMatrix ket_bra(G row, G col) {
    ComplexMatrix m = ComplexMatrix::Zero(kQuditDim, kQuditDim);
    m(index_of(row), index_of(col)) = 1.0;
    return m;
}

auto factor_key(const RibbonFactor &f) {
    return std::make_tuple(f.ribbon, index_of(f.h), index_of(f.g));
}

auto monomial_key(const RibbonMonomial &m) {
    std::vector<std::tuple<std::string, int, int>> key;
    key.reserve(m.factors.size());
    for (const auto &f : m.factors) {
        key.push_back(factor_key(f));
    }
    return key;
}

}  // namespace

QuditOperator l_operator(GroupElement h, Orientation orientation) {
    ComplexMatrix m = ComplexMatrix::Zero(kQuditDim, kQuditDim);
    for (G g : kAllElements) {
        G image = orientation == Orientation::along ? multiply(h, g) : multiply(g, inverse(h));
        m(index_of(image), index_of(g)) = 1.0;
    }
    return {m};
}

QuditOperator t_operator(GroupElement g, Orientation orientation) {
    G col = orientation == Orientation::along ? g : inverse(g);
    return {ket_bra(g, col)};
}

QuditOperator f_hg(GroupElement h, GroupElement g) {
    return {l_operator(h, Orientation::along).matrix * t_operator(g, Orientation::along).matrix};
}

QutritOperator restrict_to_qutrit(const QuditOperator &op) {
    return {op.matrix.topLeftCorner(kQutritDim, kQutritDim)};
}

bool is_qutrit_supported(const QuditOperator &op, double tol) {
    ComplexMatrix outside = op.matrix;
    outside.topLeftCorner(kQutritDim, kQutritDim).setZero();
    return outside.cwiseAbs().maxCoeff() <= tol;
}

std::string_view name_of(AnyonLabel a) {
    static constexpr std::array<std::string_view, 8> names = {"A", "B", "C", "D", "E", "F", "G", "H"};
    return names[static_cast<int>(a)];
}

AnyonLabel parse_anyon(std::string_view name) {
    for (int i = 0; i < 8; ++i) {
        auto a = static_cast<AnyonLabel>(i);
        if (name_of(a) == name) {
            return a;
        }
    }
    throw std::invalid_argument("unknown anyon label: " + std::string(name));
}

QuditOperator string_operator(AnyonLabel label) {
    switch (label) {
        case AnyonLabel::A:
            return {ComplexMatrix::Identity(kQuditDim, kQuditDim)};
        case AnyonLabel::B: {
            ComplexMatrix m = ComplexMatrix::Identity(kQuditDim, kQuditDim);
            for (int i = 3; i < kQuditDim; ++i) {
                m(i, i) = -1.0;
            }
            return {m};
        }
        default:
            throw std::invalid_argument("string_operator: only A and B are single-qudit string operators");
    }
}

RibbonSum canonicalize(const RibbonSum &sum, double drop_tol) {
    std::map<std::tuple<std::string, int, int>, RibbonTerm> merged;
    for (const auto &term : sum) {
        auto key = factor_key({term.ribbon, term.h, term.g});
        auto [it, inserted] = merged.try_emplace(key, term);
        if (!inserted) {
            it->second.coeff += term.coeff;
        }
    }
    RibbonSum out;
    for (auto &[key, term] : merged) {
        if (std::abs(term.coeff) > drop_tol) {
            out.push_back(term);
        }
    }
    return out;
}

RibbonSum on_ribbon(RibbonSum sum, const std::string &ribbon) {
    for (auto &term : sum) {
        term.ribbon = ribbon;
    }
    return sum;
}

RibbonWord RibbonWord::product(const std::vector<RibbonSum> &sums) {
    RibbonWord word;
    word.monomials.push_back({1.0, {}});
    for (const auto &sum : sums) {
        std::vector<RibbonMonomial> next;
        next.reserve(word.monomials.size() * sum.size());
        for (const auto &m : word.monomials) {
            for (const auto &term : sum) {
                RibbonMonomial grown = m;
                grown.coeff *= term.coeff;
                grown.factors.push_back({term.ribbon, term.h, term.g});
                next.push_back(std::move(grown));
            }
        }
        word.monomials = std::move(next);
    }
    return word;
}

double RibbonWord::l1_mass() const {
    double total = 0.0;
    for (const auto &m : monomials) {
        total += std::abs(m.coeff);
    }
    return total;
}

RibbonWord canonicalize(const RibbonWord &word, double drop_tol) {
    std::map<std::vector<std::tuple<std::string, int, int>>, RibbonMonomial> merged;
    for (const auto &m : word.monomials) {
        auto [it, inserted] = merged.try_emplace(monomial_key(m), m);
        if (!inserted) {
            it->second.coeff += m.coeff;
        }
    }
    RibbonWord out;
    for (auto &[key, m] : merged) {
        if (std::abs(m.coeff) > drop_tol) {
            out.monomials.push_back(m);
        }
    }
    return out;
}

ComplexMatrix materialize(const RibbonTerm &term, SiteConvention convention) {
    G h = term.h;
    G h_inv = inverse(h);
    if (convention == SiteConvention::hermitian_pair && index_of(h_inv) < index_of(h)) {
        return term.coeff * f_hg(h_inv, term.g).matrix.adjoint();
    }
    return term.coeff * f_hg(h, term.g).matrix;
}

QuditOperator materialize(const RibbonSum &sum, SiteConvention convention) {
    ComplexMatrix m = ComplexMatrix::Zero(kQuditDim, kQuditDim);
    for (const auto &term : sum) {
        m += materialize(term, convention);
    }
    return {m};
}

QuditOperator materialize(const RibbonWord &word, SiteConvention convention) {
    ComplexMatrix total = ComplexMatrix::Zero(kQuditDim, kQuditDim);
    for (const auto &mono : word.monomials) {
        ComplexMatrix prod = ComplexMatrix::Identity(kQuditDim, kQuditDim);
        for (const auto &f : mono.factors) {
            prod = prod * materialize(RibbonTerm{1.0, f.ribbon, f.h, f.g}, convention);
        }
        total += mono.coeff * prod;
    }
    return {total};
}

RibbonSum abelian_transform(const Irrep &chi, const std::string &ribbon) {
    if (chi.dimension != 1 || chi.domain.size() != kAllElements.size()) {
        throw std::invalid_argument("abelian_transform: character must be a one-dimensional irrep of S3, got " +
                                    std::string(name_of(chi.label)));
    }
    RibbonSum out;
    for (G g : kAllElements) {
        out.push_back({std::conj(character(chi, g)), ribbon, G::e, g});
    }
    return canonicalize(out);
}

RibbonSum nonabelian_transform(const ConjugacyClassData &cls, const Irrep &r, const std::string &ribbon,
                               bool normalized) {
    auto same_set = [](std::vector<G> a, std::vector<G> b) {
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    };
    if (!same_set(r.domain, cls.normalizer)) {
        throw std::invalid_argument("nonabelian_transform: irrep " + std::string(name_of(r.label)) +
                                    " is not defined on the class normalizer");
    }
    const double prefactor =
        normalized ? static_cast<double>(r.dimension) / static_cast<double>(cls.normalizer.size()) : 1.0;
    RibbonSum out;
    for (size_t i = 0; i < cls.elements.size(); ++i) {
        G flux = inverse(cls.elements[i]);
        G q = cls.coset_reps[i];
        for (G n : cls.normalizer) {
            out.push_back({prefactor * std::conj(character(r, n)), ribbon, flux, conjugate(q, n)});
        }
    }
    return canonicalize(out);
}

RibbonSum g_ribbon_terms(const std::string &ribbon) {
    return nonabelian_transform(conjugacy_class(G::c), irrep(IrrepLabel::z3_omega), ribbon);
}

QutritOperator minimal_g_ribbon() {
    const Complex w = omega();
    ComplexMatrix half = f_hg(G::c, G::e).matrix + w * f_hg(G::c, G::c).matrix +
                         std::conj(w) * f_hg(G::c, G::c2).matrix;
    return restrict_to_qutrit({half + half.adjoint()});
}

AnyonDecomposition decompose(const QutritOperator &product) {
    ComplexMatrix target = ComplexMatrix::Zero(kQuditDim, kQuditDim);
    target.topLeftCorner(kQutritDim, kQutritDim) = product.matrix;
    ComplexMatrix fg = ComplexMatrix::Zero(kQuditDim, kQuditDim);
    fg.topLeftCorner(kQutritDim, kQutritDim) = minimal_g_ribbon().matrix;
    const std::array<ComplexMatrix, 3> basis = {string_operator(AnyonLabel::A).matrix,
                                                string_operator(AnyonLabel::B).matrix, fg};
    // Least squares over vectorized operators.
    Eigen::Matrix<Complex, Eigen::Dynamic, 3> design(kQuditDim * kQuditDim, 3);
    for (int k = 0; k < 3; ++k) {
        design.col(k) = basis[k].reshaped();
    }
    ComplexVector rhs = target.reshaped();
    Eigen::Vector<Complex, 3> x = design.completeOrthogonalDecomposition().solve(rhs);
    ComplexMatrix recon = x(0) * basis[0] + x(1) * basis[1] + x(2) * basis[2];
    return {x(0), x(1), x(2), (recon - target).norm()};
}

AnyonDecomposition fuse(const QutritOperator &a, const QutritOperator &b) {
    return decompose({a.matrix * b.matrix});
}

RibbonWord exchange_rewrite(const RibbonWord &word) {
    RibbonWord out;
    out.monomials.reserve(word.monomials.size());
    for (const auto &m : word.monomials) {
        if (m.factors.size() != 2) {
            throw std::invalid_argument("exchange_rewrite: every monomial needs exactly two factors");
        }
        const auto &outer = m.factors[0];  // F^{h,g}_{r2}
        const auto &inner = m.factors[1];  // F^{k,l}_{r1}
        if (outer.ribbon == inner.ribbon) {
            throw std::invalid_argument("exchange_rewrite: factors share ribbon " + outer.ribbon);
        }
        G shifted = multiply(multiply(multiply(inner.g, inverse(outer.g)), inverse(outer.h)), outer.g);
        out.monomials.push_back({m.coeff, {{inner.ribbon, inner.h, shifted}, outer}});
    }
    return canonicalize(out);
}

RibbonWord reversed_g_word() {
    auto word = RibbonWord::product({g_ribbon_terms("rho2"), g_ribbon_terms("rho1")});
    return exchange_rewrite(word);
}

QutritOperator forward_g_product() {
    auto word = RibbonWord::product({g_ribbon_terms("rho1"), g_ribbon_terms("rho2")});
    return restrict_to_qutrit(materialize(word, SiteConvention::hermitian_pair));
}

QutritOperator reversed_g_product() {
    return restrict_to_qutrit(materialize(reversed_g_word(), SiteConvention::hermitian_pair));
}

ComplexMatrix extract_r_matrix(const AnyonDecomposition &forward, const AnyonDecomposition &reversed) {
    const std::array<Complex, 3> fwd = {forward.coeff_a, forward.coeff_b, forward.coeff_g};
    const std::array<Complex, 3> rev = {reversed.coeff_a, reversed.coeff_b, reversed.coeff_g};
    ComplexMatrix r = ComplexMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
        if (std::abs(fwd[i]) < 1e-12) {
            throw std::domain_error("extract_r_matrix: fusion channel " + std::to_string(i) +
                                    " has zero forward coefficient");
        }
        r(i, i) = rev[i] / fwd[i];
    }
    return r;
}

ComplexMatrix braiding_matrix(const ComplexMatrix &f, const ComplexMatrix &r) {
    if (f.rows() != f.cols() || r.rows() != r.cols() || f.rows() != r.rows()) {
        throw std::invalid_argument("braiding_matrix: F and R must be square of equal size");
    }
    if (!is_unitary(f)) {
        throw std::invalid_argument("braiding_matrix: F is not unitary");
    }
    ComplexMatrix off = r;
    off.diagonal().setZero();
    if (off.size() > 0 && off.cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("braiding_matrix: R is not diagonal");
    }
    return f * r * r * f.inverse();
}

ComplexMatrix f_matrix_ggg() {
    const double s = std::numbers::sqrt2;
    return 0.5 * matrix_from_rows({{1, 1, s}, {1, 1, -s}, {s, -s, 0}});
}

ComplexMatrix r_matrix_gg() {
    return matrix_from_rows({{omega_bar(), 0, 0}, {0, omega_bar(), 0}, {0, 0, omega()}});
}

ComplexMatrix f_matrix_phi() {
    const double s = std::numbers::sqrt2;
    return 0.5 * matrix_from_rows({{1, 1, -s}, {1, 1, s}, {-s, s, 0}});
}

ComplexMatrix r_matrix_phi() {
    return matrix_from_rows({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
}

std::vector<AnyonLabel> fusion_lookup(AnyonLabel a, AnyonLabel b) {
    // Fusion rules of D(S3), rows/cols A..H, outcomes as strings of labels.
    static constexpr std::array<std::array<std::string_view, 8>, 8> table = {{
        {"A", "B", "C", "D", "E", "F", "G", "H"},
        {"B", "A", "C", "E", "D", "F", "G", "H"},
        {"C", "C", "ABC", "DE", "DE", "GH", "FH", "FG"},
        {"D", "E", "DE", "ACFGH", "BCFGH", "DE", "DE", "DE"},
        {"E", "D", "DE", "BCFGH", "ACFGH", "DE", "DE", "DE"},
        {"F", "F", "GH", "DE", "DE", "ABF", "HC", "GC"},
        {"G", "G", "FH", "DE", "DE", "HC", "ABG", "FC"},
        {"H", "H", "FG", "DE", "DE", "GC", "FC", "ABH"},
    }};
    std::vector<AnyonLabel> out;
    for (char ch : table[static_cast<int>(a)][static_cast<int>(b)]) {
        out.push_back(parse_anyon(std::string_view(&ch, 1)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ds3
