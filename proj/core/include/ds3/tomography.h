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

#ifndef DS3_TOMOGRAPHY_H
#define DS3_TOMOGRAPHY_H

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ds3/channel.h"
#include "ds3/numerics.h"

namespace ds3 {

inline constexpr int kMubDim = 3;
inline constexpr int kMubCount = 4;
inline constexpr int kSettings = kMubDim * kMubCount;  // 12 states per side

/// Four mutually unbiased qutrit bases; bases[mu].col(j) is |M^mu_j>.
struct MubSet {
    std::array<ComplexMatrix, kMubCount> bases;

    /// State index 3 * mu + j.
    ComplexVector vector(int mu, int j) const { return bases[mu].col(j); }
};

/// Basis 0 is computational; basis mu in {1, 2, 3} has vectors sum_i phase^(j i + mu i^2) |i> / sqrt(3).
MubSet mub_vectors();
/// Same construction with an arbitrary root `phase` in place of exp(2 pi i / 3).
MubSet mub_vectors_with_phase(Complex phase);

/// Largest deviation from the MUB conditions: within-basis Gram vs identity and cross-basis |<v|w>|^2 vs 1/3.
double mub_defect(const MubSet &set);

/// Intensities I[mu][i][nu][j] = N Tr[Pi^mu_i chi(tau^nu_j)], measurement (mu, i) and preparation (nu, j).
struct TomographyData {
    std::vector<double> intensities;  // size 144, see index()
    std::optional<long> shots_per_setting;
    uint64_t seed = 0;
    double scale_truth = 1.0;

    static int index(int mu, int i, int nu, int j) { return ((3 * mu + i) * kSettings + 3 * nu + j); }
    double at(int mu, int i, int nu, int j) const { return intensities[index(mu, i, nu, j)]; }
};

/// Exact intensities when shots is empty or zero; otherwise Poisson counts with mean shots * p,
/// rescaled by scale / shots.
TomographyData simulate_measurements(const KrausProcess &process, double scale, std::optional<long> shots,
                                     uint64_t seed);

/// Same, with explicit preparation and measurement vectors (12 each, index 3 * mu + j).
TomographyData simulate_measurements(const KrausProcess &process, double scale, std::optional<long> shots,
                                     uint64_t seed, const std::vector<ComplexVector> &preparations,
                                     const std::vector<ComplexVector> &measurements);

struct ReconstructConfig {
    int max_iters = 2000;
    double tol = 1e-10;
};

struct ProcessEstimate {
    ChoiState choi;       // normalized
    double scale = 0.0;   // N-hat
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;  // initial value, then one entry per iteration
};

/// Least squares over unit-trace PSD Choi matrices and a free scale, by projected gradient.
/// Throws std::invalid_argument unless the data holds all 144 settings.
ProcessEstimate reconstruct(const TomographyData &data, const ReconstructConfig &config = {});

/// Intensity scale a perfect reconstruction recovers: scale * Tr[sum K^dagger K] / d.
double expected_scale(const KrausProcess &process, double scale);

struct FidelitySummary {
    double mean = 0.0;
    double std = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::vector<double> fidelities;
};

/// Every preparation and measurement vector is rotated by exp(i eps H) with a per-trial random
/// Hermitian H of unit spectral norm; data is regenerated exactly and reconstructed against the
/// ideal bases.
FidelitySummary perturbed_qpt(const KrausProcess &process, double epsilon, int trials, uint64_t seed,
                              const ReconstructConfig &config = {});

/// 12 x 12 matrix of intensities, rows = measurement state (3 mu + i), columns = preparation state (3 nu + j).
Eigen::MatrixXd coupling_matrix(const TomographyData &data);

}  // namespace ds3

#endif
