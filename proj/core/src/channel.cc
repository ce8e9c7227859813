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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ds3 {

namespace {

constexpr double kPsdSlack = 1e-9;
constexpr double kTraceSlack = 1e-10;
constexpr double kDropRatio = 1e-12;

ComplexVector vec_row_major(const ComplexMatrix &k) {
    ComplexVector v(k.size());
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
        for (Eigen::Index j = 0; j < k.cols(); ++j) {
            v(i * k.cols() + j) = k(i, j);
        }
    }
    return v;
}

ComplexMatrix unvec_row_major(const ComplexVector &v, int rows, int cols) {
    ComplexMatrix k(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            k(i, j) = v(i * cols + j);
        }
    }
    return k;
}

void fix_phase(ComplexMatrix &k) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    k.cwiseAbs().maxCoeff(&r, &c);
    const double mag = std::abs(k(r, c));
    if (mag > 0.0) {
        k *= std::conj(k(r, c)) / mag;
        k(r, c) = Complex(k(r, c).real(), 0.0);
    }
}

}  // namespace

int KrausProcess::dim_in() const {
    return operators.empty() ? 0 : static_cast<int>(operators.front().cols());
}

int KrausProcess::dim_out() const {
    return operators.empty() ? 0 : static_cast<int>(operators.front().rows());
}

void require_consistent(const KrausProcess &k) {
    if (k.operators.empty()) {
        throw std::invalid_argument("KrausProcess: no operators");
    }
    for (const ComplexMatrix &op : k.operators) {
        if (op.rows() != k.dim_out() || op.cols() != k.dim_in() || op.size() == 0) {
            throw std::invalid_argument("KrausProcess: operator shapes disagree");
        }
    }
}

double max_transmission(const KrausProcess &k) {
    require_consistent(k);
    ComplexMatrix total = ComplexMatrix::Zero(k.dim_in(), k.dim_in());
    for (const ComplexMatrix &op : k.operators) {
        total += op.adjoint() * op;
    }
    return eigenvalues_hermitian(0.5 * (total + total.adjoint())).maxCoeff();
}

bool is_non_trace_increasing(const KrausProcess &k, double tol) {
    return max_transmission(k) <= 1.0 + tol;
}

ComplexMatrix apply_process(const KrausProcess &k, const ComplexMatrix &rho) {
    require_consistent(k);
    if (rho.rows() != k.dim_in() || rho.cols() != k.dim_in()) {
        throw std::invalid_argument("apply_process: input dimension mismatch");
    }
    ComplexMatrix out = ComplexMatrix::Zero(k.dim_out(), k.dim_out());
    for (const ComplexMatrix &op : k.operators) {
        out += op * rho * op.adjoint();
    }
    return out;
}

ChoiState kraus_to_choi(const KrausProcess &k, bool normalize) {
    require_consistent(k);
    const int dim = k.dim_out() * k.dim_in();
    ChoiState c;
    c.dim_out = k.dim_out();
    c.dim_in = k.dim_in();
    c.matrix = ComplexMatrix::Zero(dim, dim);
    for (const ComplexMatrix &op : k.operators) {
        const ComplexVector v = vec_row_major(op);
        c.matrix += v * v.adjoint();
    }
    c.matrix /= static_cast<double>(k.dim_in());
    if (normalize) {
        const double tr = c.matrix.trace().real();
        if (!(tr > 0.0)) {
            throw std::invalid_argument("kraus_to_choi: zero process cannot be normalized");
        }
        c.matrix /= tr;
        c.normalized = true;
    }
    return c;
}

void validate(const ChoiState &c) {
    if (c.matrix.rows() != c.dim_out * c.dim_in || c.matrix.cols() != c.matrix.rows()) {
        throw std::invalid_argument("ChoiState: matrix shape disagrees with dims");
    }
    const RealVector ev = eigenvalues_hermitian(c.matrix);
    if (ev.size() > 0 && ev(0) < -kPsdSlack) {
        throw std::invalid_argument("ChoiState: not positive semidefinite, min eigenvalue " + std::to_string(ev(0)));
    }
    if (c.normalized && std::abs(c.matrix.trace().real() - 1.0) > kTraceSlack) {
        throw std::invalid_argument("ChoiState: normalized flag set but trace is " +
                                    std::to_string(c.matrix.trace().real()));
    }
}

KrausProcess choi_to_kraus(const ChoiState &c) {
    if (c.matrix.rows() != c.dim_out * c.dim_in || c.dim_in <= 0) {
        throw std::invalid_argument("choi_to_kraus: matrix shape disagrees with dims");
    }
    const SpectralDecomposition spec = eig_hermitian(c.matrix);
    const Eigen::Index n = c.matrix.rows();
    const double lmin = spec.eigenvalues.front().real();
    const double lmax = spec.eigenvalues.back().real();
    if (lmin < -kPsdSlack) {
        throw std::invalid_argument("choi_to_kraus: Choi matrix not PSD, min eigenvalue " + std::to_string(lmin));
    }
    KrausProcess out;
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        const double lambda = spec.eigenvalues[k].real();
        if (lambda <= kDropRatio * lmax) {
            break;
        }
        ComplexMatrix op =
            std::sqrt(lambda * c.dim_in) * unvec_row_major(spec.eigenvectors.col(k), c.dim_out, c.dim_in);
        fix_phase(op);
        out.operators.push_back(std::move(op));
    }
    if (out.operators.empty()) {
        throw std::invalid_argument("choi_to_kraus: zero Choi matrix");
    }
    return out;
}

std::vector<double> kraus_weights(const KrausProcess &k) {
    require_consistent(k);
    std::vector<double> out;
    out.reserve(k.operators.size());
    for (const ComplexMatrix &op : k.operators) {
        out.push_back(op.squaredNorm() / k.dim_in());
    }
    return out;
}

double purity(const ChoiState &c) {
    const double tr = c.matrix.trace().real();
    if (std::abs(tr - 1.0) > kTraceSlack) {
        throw std::invalid_argument("purity: Choi state is not unit trace (trace " + std::to_string(tr) + ")");
    }
    return (c.matrix * c.matrix).trace().real();
}

double fidelity(const ChoiState &a, const ChoiState &b) {
    if (a.matrix.rows() != b.matrix.rows() || a.dim_in != b.dim_in || a.dim_out != b.dim_out) {
        throw std::invalid_argument("fidelity: Choi dimensions differ");
    }
    for (const ChoiState *c : {&a, &b}) {
        if (std::abs(c->matrix.trace().real() - 1.0) > kTraceSlack) {
            throw std::invalid_argument("fidelity: Choi state is not unit trace");
        }
    }
    const ComplexMatrix root = psd_sqrt(a.matrix);
    ComplexMatrix inner = root * b.matrix * root;
    inner = 0.5 * (inner + inner.adjoint()).eval();
    const RealVector ev = eigenvalues_hermitian(inner);
    const double floor = ev.size() == 0 ? 0.0 : 1e-14 * ev.cwiseAbs().maxCoeff();
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > floor) {
            s += std::sqrt(ev(i));
        }
    }
    return std::clamp(s * s, 0.0, 1.0);
}

KrausProcess postselected_process(const Dilation &d, int ancilla_prep, int success_outcome) {
    const int n = d.signal_dim();
    const int stride = d.block_dim > 0 ? d.block_dim : n;
    const auto in_range = [&](int index, Eigen::Index extent) {
        return index >= 0 && static_cast<Eigen::Index>(index) * stride + n <= extent;
    };
    if (!in_range(ancilla_prep, d.enclosing.cols()) || !in_range(success_outcome, d.enclosing.rows())) {
        throw std::out_of_range("postselected_process: ancilla index outside the enclosing matrix");
    }
    KrausProcess k;
    k.operators.push_back(d.enclosing.block(success_outcome * stride, ancilla_prep * stride, n, n));
    return k;
}

}  // namespace ds3
