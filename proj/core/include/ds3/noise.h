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

#ifndef DS3_NOISE_H
#define DS3_NOISE_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ds3/channel.h"

namespace ds3 {

enum class NoiseKind { depolarizing, dephasing };

std::string_view name_of(NoiseKind kind);
NoiseKind parse_noise_kind(std::string_view name);

struct NoiseModel {
    NoiseKind kind = NoiseKind::depolarizing;
    double p = 0.0;
    int dimension = 3;
};

/// Throws std::invalid_argument unless p lies in [0, 1] and dimension >= 1.
void validate(const NoiseModel &model);

/// Kraus operators of the noise channel alone.
/// depolarizing: (1 - p) s + p Tr(s) 1/d via Weyl operators X^a Z^b.
/// dephasing: (1 - p) s + p diag(s) via clock powers Z^b.
KrausProcess noise_channel(const NoiseModel &model);

/// The noise channel composed after `process`. Throws std::invalid_argument on a dimension mismatch.
KrausProcess apply_noise(const NoiseModel &model, const KrausProcess &process);

struct NamedTarget {
    std::string name;
    ComplexMatrix matrix;  // rescaled by its largest singular value before use
};

struct BenchmarkRow {
    std::string target;
    NoiseKind kind = NoiseKind::depolarizing;
    double p = 0.0;
    double purity = 0.0;
    double fidelity = 0.0;
    /// Same two metrics after a tomography round trip of the noisy process.
    double certified_purity = 0.0;
    double certified_fidelity = 0.0;
};

struct BenchmarkOptions {
    bool certify = true;
    long shots = 0;  // 0 = exact intensities
};

std::vector<BenchmarkRow> noisy_benchmark(const std::vector<NamedTarget> &targets,
                                          const std::vector<NoiseModel> &grid, uint64_t seed,
                                          const BenchmarkOptions &options = {});

/// Header target,p,purity,fidelity followed by one line per row.
std::string benchmark_csv(const std::vector<BenchmarkRow> &rows);

/// Depolarizing models at p = 0, 1/(points-1), ..., 1.
std::vector<NoiseModel> depolarizing_grid(int points, int dimension = 3);

}  // namespace ds3

#endif
