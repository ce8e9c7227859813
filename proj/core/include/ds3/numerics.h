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

#ifndef DS3_NUMERICS_H
#define DS3_NUMERICS_H

#include <complex>
#include <initializer_list>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace ds3 {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default absolute entrywise comparison tolerance.
inline constexpr double kDefaultTolerance = 1e-10;

/// The primitive cube root of unity exp(2 pi i / 3), built from exact trig constants.
inline Complex omega() {
    return {-0.5, std::numbers::sqrt3 / 2.0};
}
inline Complex omega_bar() {
    return {-0.5, -std::numbers::sqrt3 / 2.0};
}

struct SvdDecomposition {
    ComplexMatrix u;
    RealVector singular_values;  // descending, non-negative
    ComplexMatrix v_adjoint;

    ComplexMatrix reconstruct() const;
};

struct SpectralDecomposition {
    std::vector<Complex> eigenvalues;
    ComplexMatrix eigenvectors;  // unit-norm columns
};

/// Builds a matrix from nested row lists. Throws on ragged input.
ComplexMatrix matrix_from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

bool all_finite(const ComplexMatrix &m);
double frobenius_norm(const ComplexMatrix &m);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol = kDefaultTolerance);

/// ||U^dagger U - 1||_F. Works for isometries (tall U) as well.
double unitarity_residual(const ComplexMatrix &u);
bool is_unitary(const ComplexMatrix &u, double tol = 1e-9);

/// ||M - M^dagger||_F.
double hermitian_asymmetry(const ComplexMatrix &m);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Singular value decomposition M = U diag(s) V^dagger with s descending.
/// Throws std::runtime_error if the reconstruction residual exceeds 1e-9 ||M||_F.
SvdDecomposition svd(const ComplexMatrix &m);

/// Largest singular value (operator 2-norm).
double spectral_norm(const ComplexMatrix &m);

/// Eigendecomposition of a Hermitian matrix: real eigenvalues ascending, orthonormal eigenvectors.
/// Throws std::invalid_argument with the measured asymmetry if ||m - m^dagger||_F > 1e-9 max(1, ||m||_F).
SpectralDecomposition eig_hermitian(const ComplexMatrix &m);

/// Real eigenvalues of a Hermitian matrix, ascending.
RealVector eigenvalues_hermitian(const ComplexMatrix &m);

/// Nearest positive semidefinite matrix in Frobenius norm (eigenvalue clipping at 0).
/// The input is symmetrized before decomposition.
ComplexMatrix psd_project(const ComplexMatrix &m);

/// Principal square root of a PSD matrix; eigenvalues below 1e-14 of the largest magnitude are set to 0.
ComplexMatrix psd_sqrt(const ComplexMatrix &m);

/// Number of eigenvalues above rel_tol times the largest |eigenvalue|.
int numerical_rank_hermitian(const ComplexMatrix &m, double rel_tol = 1e-9);

}  // namespace ds3

#endif
