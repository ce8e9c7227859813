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

#include "ds3/noise.h"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "ds3/tomography.h"

namespace ds3 {

namespace {

ComplexMatrix shift(int d) {
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        x((i + 1) % d, i) = 1.0;
    }
    return x;
}

ComplexMatrix clock(int d) {
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        z(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * i / d);
    }
    return z;
}

ComplexMatrix power(const ComplexMatrix &m, int k) {
    ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) {
        out = out * m;
    }
    return out;
}

}  // namespace

std::string_view name_of(NoiseKind kind) {
    return kind == NoiseKind::depolarizing ? "depolarizing" : "dephasing";
}

NoiseKind parse_noise_kind(std::string_view name) {
    if (name == "depolarizing") {
        return NoiseKind::depolarizing;
    }
    if (name == "dephasing") {
        return NoiseKind::dephasing;
    }
    throw std::invalid_argument("unknown noise kind: " + std::string(name));
}

void validate(const NoiseModel &model) {
    if (!(model.p >= 0.0 && model.p <= 1.0)) {
        throw std::invalid_argument("NoiseModel: strength must lie in [0, 1]");
    }
    if (model.dimension < 1) {
        throw std::invalid_argument("NoiseModel: dimension must be positive");
    }
}

KrausProcess noise_channel(const NoiseModel &model) {
    validate(model);
    const int d = model.dimension;
    const ComplexMatrix x = shift(d);
    const ComplexMatrix z = clock(d);
    KrausProcess out;
    if (model.kind == NoiseKind::depolarizing) {
        const double dd = static_cast<double>(d) * d;
        out.operators.push_back(std::sqrt(1.0 - model.p + model.p / dd) * ComplexMatrix::Identity(d, d));
        if (model.p > 0.0) {
            for (int a = 0; a < d; ++a) {
                for (int b = 0; b < d; ++b) {
                    if (a == 0 && b == 0) {
                        continue;
                    }
                    out.operators.push_back(std::sqrt(model.p / dd) * power(x, a) * power(z, b));
                }
            }
        }
    } else {
        out.operators.push_back(std::sqrt(1.0 - model.p + model.p / d) * ComplexMatrix::Identity(d, d));
        if (model.p > 0.0) {
            for (int b = 1; b < d; ++b) {
                out.operators.push_back(std::sqrt(model.p / d) * power(z, b));
            }
        }
    }
    return out;
}

KrausProcess apply_noise(const NoiseModel &model, const KrausProcess &process) {
    require_consistent(process);
    if (process.dim_out() != model.dimension) {
        throw std::invalid_argument("apply_noise: noise dimension " + std::to_string(model.dimension) +
                                    " does not match process output dimension " +
                                    std::to_string(process.dim_out()));
    }
    const KrausProcess noise = noise_channel(model);
    KrausProcess out;
    for (const ComplexMatrix &n : noise.operators) {
        for (const ComplexMatrix &k : process.operators) {
            out.operators.push_back(n * k);
        }
    }
    return out;
}

std::vector<BenchmarkRow> noisy_benchmark(const std::vector<NamedTarget> &targets,
                                          const std::vector<NoiseModel> &grid, uint64_t seed,
                                          const BenchmarkOptions &options) {
    std::vector<BenchmarkRow> rows;
    for (const NamedTarget &target : targets) {
        const Rescaled r = rescale(target.matrix);
        const KrausProcess ideal{{r.scaled}};
        const ChoiState ideal_choi = kraus_to_choi(ideal, true);
        for (const NoiseModel &model : grid) {
            const KrausProcess noisy = apply_noise(model, ideal);
            const ChoiState choi = kraus_to_choi(noisy, true);
            BenchmarkRow row;
            row.target = target.name;
            row.kind = model.kind;
            row.p = model.p;
            row.purity = purity(choi);
            row.fidelity = fidelity(ideal_choi, choi);
            if (options.certify) {
                const TomographyData data =
                    simulate_measurements(noisy, 1.0, options.shots > 0 ? std::optional<long>(options.shots)
                                                                        : std::nullopt,
                                          seed);
                const ProcessEstimate est = reconstruct(data);
                row.certified_purity = purity(est.choi);
                row.certified_fidelity = fidelity(ideal_choi, est.choi);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::string benchmark_csv(const std::vector<BenchmarkRow> &rows) {
    std::ostringstream out;
    out << "target,p,purity,fidelity\n" << std::setprecision(12);
    for (const BenchmarkRow &row : rows) {
        out << row.target << ',' << row.p << ',' << row.purity << ',' << row.fidelity << '\n';
    }
    return out.str();
}

std::vector<NoiseModel> depolarizing_grid(int points, int dimension) {
    if (points < 2) {
        throw std::invalid_argument("depolarizing_grid: need at least two points");
    }
    std::vector<NoiseModel> grid;
    for (int i = 0; i < points; ++i) {
        grid.push_back({NoiseKind::depolarizing, static_cast<double>(i) / (points - 1), dimension});
    }
    return grid;
}

}  // namespace ds3
