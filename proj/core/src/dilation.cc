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

#include "ds3/dilation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ds3/ribbon.h"

namespace ds3 {

namespace {

constexpr double kAlphaSlack = 1e-10;
constexpr double kRankTolerance = 1e-9;

void require_square_nonempty(const ComplexMatrix &t, const char *where) {
    if (t.rows() == 0 || t.rows() != t.cols()) {
        throw std::invalid_argument(std::string(where) + ": target must be square and non-empty");
    }
}

void require_alpha(const ComplexMatrix &t, double alpha, const char *where) {
    const double smax = spectral_norm(t);
    if (!(alpha > 0.0) || alpha < smax - kAlphaSlack) {
        throw std::domain_error(std::string(where) + ": alpha " + std::to_string(alpha) +
                                " is below the largest singular value " + std::to_string(smax));
    }
}

// Singular values of T/alpha can exceed 1 by rounding when alpha == sigma_max.
double clamp_unit(double s) {
    return std::clamp(s, 0.0, 1.0);
}

}  // namespace

std::string_view name_of(DilationKind kind) {
    switch (kind) {
        case DilationKind::svd_block:
            return "svd_block";
        case DilationKind::minimal_isometry:
            return "minimal_isometry";
        case DilationKind::explicit_uf:
            return "explicit_uf";
    }
    return "?";
}

ComplexMatrix Dilation::signal_block() const {
    const int n = signal_dim();
    return enclosing.topLeftCorner(n, n);
}

Rescaled rescale(const ComplexMatrix &t) {
    const double alpha = spectral_norm(t);
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("rescale: zero matrix has no finite scale");
    }
    return {t / alpha, alpha};
}

Dilation svd_dilation(const ComplexMatrix &t, double alpha) {
    require_square_nonempty(t, "svd_dilation");
    require_alpha(t, alpha, "svd_dilation");
    const Eigen::Index n = t.rows();
    const ComplexMatrix a = t / alpha;
    const SvdDecomposition dec = svd(a);
    RealVector defect(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double s = clamp_unit(dec.singular_values(k));
        defect(k) = std::sqrt(1.0 - s * s);
    }
    const ComplexMatrix s_block = dec.u * defect.cast<Complex>().asDiagonal() * dec.v_adjoint;

    Dilation d;
    d.target = t;
    d.alpha = alpha;
    d.aux_modes = static_cast<int>(n);
    d.kind = DilationKind::svd_block;
    d.block_dim = static_cast<int>(n);
    d.enclosing.resize(2 * n, 2 * n);
    d.enclosing << a, s_block, s_block, -a;
    return d;
}

Dilation explicit_uf() {
    const Complex w = omega();
    const Complex wb = omega_bar();
    const double r3 = std::sqrt(3.0);
    const double h = 0.5;
    const double a = 1.0 / r3;
    const double b = 1.0 / (2.0 * r3);
    Dilation d;
    d.target = minimal_g_ribbon().matrix;
    d.alpha = 2.0;
    d.aux_modes = 5;
    d.kind = DilationKind::explicit_uf;
    d.block_dim = 4;
    d.enclosing = matrix_from_rows({
        {0, h, h * wb, 0, -a, b, b * wb, 0},
        {h, 0, h * wb, 0, b, -a, b * wb, 0},
        {h * w, h * w, 0, 0, b * w, b * w, -a, 0},
        {0, 0, 0, 0, 0, 0, 0, 1},
        {-a, b, b * wb, 0, 0, -h, -h * wb, 0},
        {b, -a, b * wb, 0, -h, 0, -h * wb, 0},
        {b * w, b * w, -a, 0, -h * w, -h * w, 0, 0},
        {0, 0, 0, 1, 0, 0, 0, 0},
    });
    return d;
}

Dilation minimal_isometry(const ComplexMatrix &t, double alpha) {
    require_square_nonempty(t, "minimal_isometry");
    require_alpha(t, alpha, "minimal_isometry");
    const Eigen::Index n = t.rows();
    const ComplexMatrix a = t / alpha;
    ComplexMatrix defect = ComplexMatrix::Identity(n, n) - a.adjoint() * a;
    defect = 0.5 * (defect + defect.adjoint()).eval();
    const SpectralDecomposition spec = eig_hermitian(defect);
    double lmax = 0.0;
    for (const Complex &l : spec.eigenvalues) {
        lmax = std::max(lmax, l.real());
    }
    const double cutoff = kRankTolerance * std::max(1.0, lmax);
    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        if (spec.eigenvalues[k].real() > cutoff) {
            kept.push_back(k);
        }
    }
    const auto m = static_cast<Eigen::Index>(kept.size());
    ComplexMatrix w(m, n);
    for (Eigen::Index r = 0; r < m; ++r) {
        const Eigen::Index k = kept[r];
        w.row(r) = std::sqrt(spec.eigenvalues[k].real()) * spec.eigenvectors.col(k).adjoint();
    }

    Dilation d;
    d.target = t;
    d.alpha = alpha;
    d.aux_modes = static_cast<int>(m);
    d.kind = DilationKind::minimal_isometry;
    d.block_dim = static_cast<int>(n + m);
    d.enclosing.resize(n + m, n);
    d.enclosing.topRows(n) = a;
    d.enclosing.bottomRows(m) = w;
    return d;
}

RankLimitedEmbedding rank_limited_embedding(const ComplexMatrix &t, double alpha, int aux_modes) {
    require_square_nonempty(t, "rank_limited_embedding");
    require_alpha(t, alpha, "rank_limited_embedding");
    const Eigen::Index n = t.rows();
    if (aux_modes < 0 || aux_modes > n) {
        throw std::invalid_argument("rank_limited_embedding: aux_modes must lie in [0, n]");
    }
    const ComplexMatrix a = t / alpha;
    const SvdDecomposition dec = svd(a);
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return dec.singular_values(x) < dec.singular_values(y);
    });

    const Eigen::Index m = aux_modes;
    RealVector kept_sv = RealVector::Ones(n);
    ComplexMatrix e = ComplexMatrix::Zero(n, m);
    ComplexMatrix corner = ComplexMatrix::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const Eigen::Index k = order[j];
        const double s = clamp_unit(dec.singular_values(k));
        kept_sv(k) = s;
        e(k, j) = std::sqrt(1.0 - s * s);
        corner(j, j) = -s;
    }

    RankLimitedEmbedding out;
    out.requested_block = a;
    out.realized_block = dec.u * kept_sv.cast<Complex>().asDiagonal() * dec.v_adjoint;
    out.unitary.resize(n + m, n + m);
    out.unitary.topLeftCorner(n, n) = out.realized_block;
    out.unitary.topRightCorner(n, m) = dec.u * e;
    out.unitary.bottomLeftCorner(m, n) = e.transpose() * dec.v_adjoint;
    out.unitary.bottomRightCorner(m, m) = corner;
    out.approximation_error = frobenius_norm(out.realized_block - out.requested_block);
    return out;
}

ComplexVector postselected_apply(const Dilation &d, const ComplexVector &psi) {
    const int n = d.signal_dim();
    if (psi.size() != n) {
        throw std::invalid_argument("postselected_apply: state dimension mismatch");
    }
    ComplexVector padded = ComplexVector::Zero(d.enclosing.cols());
    padded.head(n) = psi;
    const ComplexVector out = d.enclosing * padded;
    return out.head(n);
}

double success_probability(const Dilation &d, const ComplexVector &state) {
    if (state.size() != d.signal_dim()) {
        throw std::invalid_argument("success_probability: state dimension mismatch");
    }
    const double norm = state.norm();
    if (std::abs(norm - 1.0) > 1e-9) {
        throw std::invalid_argument("success_probability: state is not normalized (norm " + std::to_string(norm) +
                                    ")");
    }
    const ComplexVector image = d.target * state;
    return image.squaredNorm() / (d.alpha * d.alpha);
}

SuccessReport success_report(const ComplexMatrix &t, std::optional<double> claimed_average) {
    require_square_nonempty(t, "success_report");
    const Rescaled r = rescale(t);
    const Eigen::Index n = t.rows();
    const RealVector sv = svd(r.scaled).singular_values;

    SuccessReport rep;
    rep.alpha = r.alpha;
    rep.p_max = std::min(1.0, sv.maxCoeff() * sv.maxCoeff());
    rep.p_min = sv.minCoeff() * sv.minCoeff();
    rep.p_avg = sv.squaredNorm() / static_cast<double>(n);

    ComplexMatrix gram = r.scaled.adjoint() * r.scaled;
    gram = 0.5 * (gram + gram.adjoint()).eval();
    const SpectralDecomposition spec = eig_hermitian(gram);
    rep.extremal_states.resize(n, n);
    rep.state_probabilities.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = n - 1 - k;
        rep.extremal_states.col(k) = spec.eigenvectors.col(src);
        rep.state_probabilities(k) = spec.eigenvalues[src].real();
    }
    if (claimed_average) {
        rep.claimed_average = claimed_average;
        rep.deviation = std::abs(rep.p_avg - *claimed_average);
    }
    return rep;
}

Eigen::MatrixXd column_overlaps(const ComplexMatrix &t) {
    Eigen::MatrixXd out(t.cols(), t.cols());
    for (Eigen::Index i = 0; i < t.cols(); ++i) {
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
            out(i, j) = std::abs(t.col(i).dot(t.col(j)));
        }
    }
    return out;
}

}  // namespace ds3
