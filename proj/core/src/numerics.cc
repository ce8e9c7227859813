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

#include "ds3/numerics.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ds3 {

ComplexMatrix SvdDecomposition::reconstruct() const {
    return u * singular_values.cast<Complex>().asDiagonal() * v_adjoint;
}

ComplexMatrix matrix_from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const auto n_rows = static_cast<Eigen::Index>(rows.size());
    const auto n_cols = n_rows == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
    ComplexMatrix out(n_rows, n_cols);
    Eigen::Index r = 0;
    for (const auto &row : rows) {
        if (static_cast<Eigen::Index>(row.size()) != n_cols) {
            throw std::invalid_argument("matrix_from_rows: ragged rows");
        }
        Eigen::Index c = 0;
        for (const auto &v : row) {
            out(r, c++) = v;
        }
        ++r;
    }
    return out;
}

bool all_finite(const ComplexMatrix &m) {
    return m.allFinite();
}

double frobenius_norm(const ComplexMatrix &m) {
    return m.norm();
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

double unitarity_residual(const ComplexMatrix &u) {
    return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).norm();
}

bool is_unitary(const ComplexMatrix &u, double tol) {
    return u.rows() == u.cols() && unitarity_residual(u) <= tol;
}

double hermitian_asymmetry(const ComplexMatrix &m) {
    return (m - m.adjoint()).norm();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

SvdDecomposition svd(const ComplexMatrix &m) {
    if (!all_finite(m)) {
        throw std::invalid_argument("svd: non-finite input");
    }
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdDecomposition out{solver.matrixU(), solver.singularValues(), solver.matrixV().adjoint()};
    // Square case: pad singular values so U D V^dagger is well-formed.
    const auto k = std::min(m.rows(), m.cols());
    if (out.singular_values.size() != k) {
        throw std::runtime_error("svd: unexpected singular value count");
    }
    if (m.rows() != m.cols()) {
        // Trim to the thin form for non-square inputs.
        out.u = out.u.leftCols(k).eval();
        out.v_adjoint = out.v_adjoint.topRows(k).eval();
    }
    const double residual = (m - out.reconstruct()).norm();
    if (residual > 1e-9 * std::max(1.0, m.norm())) {
        std::ostringstream msg;
        msg << "svd: failed to converge, residual " << residual;
        throw std::runtime_error(msg.str());
    }
    return out;
}

double spectral_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return svd(m).singular_values(0);
}

namespace {

void require_hermitian(const ComplexMatrix &m, const char *who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix not square");
    }
    const double asym = hermitian_asymmetry(m);
    if (asym > 1e-9 * std::max(1.0, m.norm())) {
        std::ostringstream msg;
        msg << who << ": matrix not Hermitian, ||m - m^dagger||_F = " << asym;
        throw std::invalid_argument(msg.str());
    }
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> hermitian_solver(const ComplexMatrix &m) {
    ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: solver failed to converge");
    }
    return solver;
}

}  // namespace

SpectralDecomposition eig_hermitian(const ComplexMatrix &m) {
    require_hermitian(m, "eig_hermitian");
    auto solver = hermitian_solver(m);
    SpectralDecomposition out;
    out.eigenvalues.reserve(static_cast<size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out.eigenvalues.emplace_back(solver.eigenvalues()(i), 0.0);
    }
    out.eigenvectors = solver.eigenvectors();
    return out;
}

RealVector eigenvalues_hermitian(const ComplexMatrix &m) {
    require_hermitian(m, "eigenvalues_hermitian");
    return hermitian_solver(m).eigenvalues();
}

ComplexMatrix psd_project(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("psd_project: matrix not square");
    }
    auto solver = hermitian_solver(m);
    RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
    const auto &v = solver.eigenvectors();
    return v * clipped.cast<Complex>().asDiagonal() * v.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("psd_sqrt: matrix not square");
    }
    auto solver = hermitian_solver(m);
    // Eigenvalues at rounding level are treated as zero; their square roots would otherwise
    // dominate the error of rank-deficient inputs.
    const RealVector &ev = solver.eigenvalues();
    const double floor = ev.size() == 0 ? 0.0 : 1e-14 * ev.cwiseAbs().maxCoeff();
    RealVector roots = ev.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
    const auto &v = solver.eigenvectors();
    return v * roots.cast<Complex>().asDiagonal() * v.adjoint();
}

int numerical_rank_hermitian(const ComplexMatrix &m, double rel_tol) {
    RealVector ev = eigenvalues_hermitian(m);
    if (ev.size() == 0) {
        return 0;
    }
    const double scale = ev.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        return 0;
    }
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) > rel_tol * scale) {
            ++rank;
        }
    }
    return rank;
}

}  // namespace ds3
