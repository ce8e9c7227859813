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

#ifndef DS3_DILATION_H
#define DS3_DILATION_H

#include <optional>
#include <string_view>

#include "ds3/numerics.h"

namespace ds3 {

enum class DilationKind { svd_block, minimal_isometry, explicit_uf };

std::string_view name_of(DilationKind kind);

/// A non-unitary target T embedded as T/alpha in the top-left block of a unitary or isometry.
struct Dilation {
    ComplexMatrix target;     // n x n
    double alpha = 1.0;
    int aux_modes = 0;        // enclosing.rows() - n
    ComplexMatrix enclosing;  // (n+m) x (n+m) unitary, or (n+m) x n isometry
    DilationKind kind = DilationKind::svd_block;
    /// Row/column stride between ancilla blocks of `enclosing`; ancilla index k selects
    /// rows/cols [k * block_dim, k * block_dim + n).
    int block_dim = 0;

    int signal_dim() const { return static_cast<int>(target.rows()); }
    /// Top-left n x n block of the enclosing matrix.
    ComplexMatrix signal_block() const;
};

struct Rescaled {
    ComplexMatrix scaled;  // t / alpha, operator norm 1
    double alpha;
};

/// alpha = largest singular value. Throws std::invalid_argument for a zero matrix.
Rescaled rescale(const ComplexMatrix &t);

/// [[T/a, U1 sqrt(1-D^2) U2], [U1 sqrt(1-D^2) U2, -T/a]] from T/a = U1 D U2.
/// Throws std::domain_error if alpha < sigma_max(t) - 1e-10.
Dilation svd_dilation(const ComplexMatrix &t, double alpha);

/// The fixed 8x8 three-qubit block encoding of the minimal G ribbon (alpha = 2), basis order
/// |000>,|100>,|010>,|110>,|001>,|101>,|011>,|111>; its target is the 3x3 minimal ribbon.
Dilation explicit_uf();

/// Isometry [T/a; W] with W^dagger W = 1 - T^dagger T / a^2 and the fewest auxiliary rows
/// (rank of the defect at relative tolerance 1e-9).
Dilation minimal_isometry(const ComplexMatrix &t, double alpha);

/// Unitary embedding using only `aux_modes` auxiliary modes. Singular values whose defect
/// sqrt(1 - s^2) is not among the aux_modes largest are raised to 1, so the realized block is
/// the best such approximation of T/alpha.
struct RankLimitedEmbedding {
    ComplexMatrix unitary;         // (n+m) x (n+m)
    ComplexMatrix realized_block;  // top-left n x n
    ComplexMatrix requested_block; // T / alpha
    double approximation_error;    // ||realized - requested||_F
};
RankLimitedEmbedding rank_limited_embedding(const ComplexMatrix &t, double alpha, int aux_modes);

/// Postselected action: enclosing applied to psi (+) 0, signal rows kept.
ComplexVector postselected_apply(const Dilation &d, const ComplexVector &psi);

/// p = <psi| T^dagger T |psi> / alpha^2. Throws std::invalid_argument for a non-normalized state.
double success_probability(const Dilation &d, const ComplexVector &state);

struct SuccessReport {
    double alpha = 1.0;
    double p_min = 0.0;
    double p_max = 0.0;
    double p_avg = 0.0;
    /// Eigenvectors of T^dagger T as columns, ordered by descending success probability.
    ComplexMatrix extremal_states;
    RealVector state_probabilities;
    std::optional<double> claimed_average;
    std::optional<double> deviation;
};

/// Success-probability bounds and average for T/sigma_max(T).
SuccessReport success_report(const ComplexMatrix &t, std::optional<double> claimed_average = std::nullopt);

/// |<col_i|col_j>| for every pair of columns.
Eigen::MatrixXd column_overlaps(const ComplexMatrix &t);

}  // namespace ds3

#endif
