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

#ifndef DS3_CHANNEL_H
#define DS3_CHANNEL_H

#include <vector>

#include "ds3/dilation.h"
#include "ds3/numerics.h"

namespace ds3 {

/// A completely positive map sigma -> sum_n K_n sigma K_n^dagger.
struct KrausProcess {
    std::vector<ComplexMatrix> operators;  // each d_out x d_in

    int dim_in() const;
    int dim_out() const;
};

/// Choi matrix with the output factor first: rho = sum_n vec(K_n) vec(K_n)^dagger / d_in,
/// vec taken row-major so that vec(K)[i * d_in + j] = K(i, j).
struct ChoiState {
    ComplexMatrix matrix;
    int dim_out = 0;
    int dim_in = 0;
    bool normalized = false;
};

/// Throws std::invalid_argument for an empty list or inconsistent shapes.
void require_consistent(const KrausProcess &k);

/// Largest eigenvalue of sum_n K_n^dagger K_n.
double max_transmission(const KrausProcess &k);
bool is_non_trace_increasing(const KrausProcess &k, double tol = 1e-9);

ComplexMatrix apply_process(const KrausProcess &k, const ComplexMatrix &rho);

ChoiState kraus_to_choi(const KrausProcess &k, bool normalize = true);

/// Kraus operators from the Choi spectrum, ordered by descending weight. Components below
/// 1e-12 of the leading eigenvalue are dropped. Each operator's largest-magnitude entry is
/// made real and positive. Throws std::invalid_argument if an eigenvalue is below -1e-9.
KrausProcess choi_to_kraus(const ChoiState &c);

/// Tr[K^dagger K] / d_in for each operator.
std::vector<double> kraus_weights(const KrausProcess &k);

/// Throws std::invalid_argument unless the Choi is PSD to 1e-9 (and unit trace when normalized).
void validate(const ChoiState &c);

/// Tr[rho^2]. Throws std::invalid_argument if c is not unit trace.
double purity(const ChoiState &c);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2, clamped to [0, 1].
double fidelity(const ChoiState &a, const ChoiState &b);

/// Single-Kraus process for an ancilla prepared in `ancilla_prep` and postselected on
/// `success_outcome`, each selecting a stride-`block_dim` block of the enclosing matrix.
KrausProcess postselected_process(const Dilation &d, int ancilla_prep, int success_outcome);

}  // namespace ds3

#endif
