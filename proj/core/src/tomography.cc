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

#include "ds3/tomography.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ds3 {

namespace {

constexpr int kTotalSettings = kSettings * kSettings;
constexpr int kChoiDim = kMubDim * kMubDim;

std::vector<ComplexVector> flatten(const MubSet &set) {
    std::vector<ComplexVector> out;
    out.reserve(kSettings);
    for (int mu = 0; mu < kMubCount; ++mu) {
        for (int j = 0; j < kMubDim; ++j) {
            out.push_back(set.vector(mu, j));
        }
    }
    return out;
}

// Exact projection onto {x >= 0, sum x = 1}.
RealVector project_to_simplex(const RealVector &v) {
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) {
            theta = candidate;
        }
    }
    return (v.array() - theta).cwiseMax(0.0);
}

// Frobenius-nearest unit-trace PSD matrix.
ComplexMatrix project_to_spectraplex(const ComplexMatrix &x) {
    const ComplexMatrix sym = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    const RealVector w = project_to_simplex(solver.eigenvalues());
    const ComplexMatrix &v = solver.eigenvectors();
    return v * w.cast<Complex>().asDiagonal() * v.adjoint();
}

// Probe vectors u_s = m (x) conj(p); model a_s(rho) = d <u_s| rho |u_s>.
std::vector<ComplexVector> probe_vectors(const std::vector<ComplexVector> &states) {
    std::vector<ComplexVector> out(kTotalSettings);
    for (int m = 0; m < kSettings; ++m) {
        for (int p = 0; p < kSettings; ++p) {
            ComplexVector u(kChoiDim);
            for (int a = 0; a < kMubDim; ++a) {
                for (int b = 0; b < kMubDim; ++b) {
                    u(a * kMubDim + b) = states[m](a) * std::conj(states[p](b));
                }
            }
            out[m * kSettings + p] = std::move(u);
        }
    }
    return out;
}

class LeastSquaresModel {
  public:
    LeastSquaresModel(const std::vector<double> &intensities, std::vector<ComplexVector> probes)
        : data_(Eigen::Map<const RealVector>(intensities.data(), static_cast<Eigen::Index>(intensities.size()))),
          probes_(std::move(probes)) {}

    RealVector predict_unit(const ComplexMatrix &rho) const {
        RealVector a(kTotalSettings);
        for (int s = 0; s < kTotalSettings; ++s) {
            a(s) = kMubDim * probes_[s].dot(rho * probes_[s]).real();
        }
        return a;
    }

    double best_scale(const RealVector &a, double fallback) const {
        const double aa = a.squaredNorm();
        return aa > 0.0 ? data_.dot(a) / aa : fallback;
    }

    double objective(const RealVector &a, double scale) const { return (data_ - scale * a).squaredNorm(); }

    ComplexMatrix gradient(const RealVector &a, double scale) const {
        const RealVector r = data_ - scale * a;
        ComplexMatrix g = ComplexMatrix::Zero(kChoiDim, kChoiDim);
        for (int s = 0; s < kTotalSettings; ++s) {
            g -= (2.0 * scale * kMubDim * r(s)) * (probes_[s] * probes_[s].adjoint());
        }
        return g;
    }

    double data_energy() const { return data_.squaredNorm(); }

  private:
    RealVector data_;
    std::vector<ComplexVector> probes_;
};

ComplexMatrix random_unit_hermitian(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix a(kMubDim, kMubDim);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        a(i) = Complex(normal(rng), normal(rng));
    }
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    return h / spectral_norm(h);
}

ComplexMatrix hermitian_exp_i(const ComplexMatrix &h, double epsilon) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    ComplexVector phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        phases(k) = std::polar(1.0, epsilon * solver.eigenvalues()(k));
    }
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

MubSet mub_vectors_with_phase(Complex phase) {
    MubSet set;
    set.bases[0] = ComplexMatrix::Identity(kMubDim, kMubDim);
    const double norm = 1.0 / std::sqrt(3.0);
    for (int mu = 1; mu < kMubCount; ++mu) {
        ComplexMatrix basis(kMubDim, kMubDim);
        for (int j = 0; j < kMubDim; ++j) {
            for (int i = 0; i < kMubDim; ++i) {
                basis(i, j) = norm * std::pow(phase, j * i + mu * i * i);
            }
        }
        set.bases[mu] = basis;
    }
    return set;
}

MubSet mub_vectors() {
    return mub_vectors_with_phase(omega());
}

double mub_defect(const MubSet &set) {
    double worst = 0.0;
    for (int mu = 0; mu < kMubCount; ++mu) {
        worst = std::max(worst, max_abs_diff(set.bases[mu].adjoint() * set.bases[mu],
                                             ComplexMatrix::Identity(kMubDim, kMubDim)));
        for (int nu = mu + 1; nu < kMubCount; ++nu) {
            const ComplexMatrix overlaps = set.bases[mu].adjoint() * set.bases[nu];
            for (Eigen::Index k = 0; k < overlaps.size(); ++k) {
                worst = std::max(worst, std::abs(std::norm(overlaps(k)) - 1.0 / kMubDim));
            }
        }
    }
    return worst;
}

TomographyData simulate_measurements(const KrausProcess &process, double scale, std::optional<long> shots,
                                     uint64_t seed) {
    const std::vector<ComplexVector> states = flatten(mub_vectors());
    return simulate_measurements(process, scale, shots, seed, states, states);
}

TomographyData simulate_measurements(const KrausProcess &process, double scale, std::optional<long> shots,
                                     uint64_t seed, const std::vector<ComplexVector> &preparations,
                                     const std::vector<ComplexVector> &measurements) {
    require_consistent(process);
    if (process.dim_in() != kMubDim || process.dim_out() != kMubDim) {
        throw std::invalid_argument("simulate_measurements: process must act on a qutrit");
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("simulate_measurements: scale must be positive");
    }
    if (preparations.size() != kSettings || measurements.size() != kSettings) {
        throw std::invalid_argument("simulate_measurements: expected 12 preparation and 12 measurement vectors");
    }
    const bool sampled = shots.has_value() && *shots > 0;
    if (shots.has_value() && *shots < 0) {
        throw std::invalid_argument("simulate_measurements: negative shot count");
    }

    TomographyData data;
    data.intensities.assign(kTotalSettings, 0.0);
    data.shots_per_setting = sampled ? shots : std::nullopt;
    data.seed = seed;
    data.scale_truth = scale;

    std::mt19937_64 rng(seed);
    for (int m = 0; m < kSettings; ++m) {
        for (int p = 0; p < kSettings; ++p) {
            double prob = 0.0;
            for (const ComplexMatrix &k : process.operators) {
                prob += std::norm(measurements[m].dot(k * preparations[p]));
            }
            double value = scale * prob;
            if (sampled) {
                const double mean = static_cast<double>(*shots) * prob;
                std::poisson_distribution<long> poisson(mean);
                const long counts = mean > 0.0 ? poisson(rng) : 0;
                value = scale * static_cast<double>(counts) / static_cast<double>(*shots);
            }
            data.intensities[m * kSettings + p] = value;
        }
    }
    return data;
}

ProcessEstimate reconstruct(const TomographyData &data, const ReconstructConfig &config) {
    if (data.intensities.size() != kTotalSettings) {
        throw std::invalid_argument("reconstruct: expected 144 intensities");
    }
    if (config.max_iters < 1 || !(config.tol > 0.0)) {
        throw std::invalid_argument("reconstruct: max_iters must be positive and tol > 0");
    }
    const LeastSquaresModel model(data.intensities, probe_vectors(flatten(mub_vectors())));

    ComplexMatrix rho = ComplexMatrix::Identity(kChoiDim, kChoiDim) / static_cast<double>(kChoiDim);
    RealVector a = model.predict_unit(rho);
    double scale = model.best_scale(a, 1.0);
    double f = model.objective(a, scale);
    const double floor = 1e-30 * std::max(model.data_energy(), 1e-300);

    ProcessEstimate est;
    est.objective_trace.push_back(f);
    double step = 1.0 / (2.0 * kTotalSettings * kMubDim * kMubDim * std::max(scale * scale, 1e-12));

    for (int iter = 1; iter <= config.max_iters; ++iter) {
        est.iterations = iter;
        const double f_prev = f;

        // Closed-form scale update.
        scale = model.best_scale(a, scale);
        f = model.objective(a, scale);

        // Projected gradient step on rho with backtracking.
        const ComplexMatrix grad = model.gradient(a, scale);
        step *= 2.0;
        bool accepted = false;
        for (int halving = 0; halving < 80; ++halving) {
            const ComplexMatrix candidate = project_to_spectraplex(rho - step * grad);
            const ComplexMatrix delta = candidate - rho;
            const RealVector a_new = model.predict_unit(candidate);
            const double f_new = model.objective(a_new, scale);
            const double bound = f + (grad.adjoint() * delta).trace().real() + delta.squaredNorm() / (2.0 * step);
            if (f_new <= bound && f_new <= f) {
                rho = candidate;
                a = a_new;
                f = f_new;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        est.objective_trace.push_back(f);

        const double decrease = f_prev - f;
        if (!accepted || f <= floor || decrease <= config.tol * f_prev) {
            est.converged = true;
            break;
        }
    }

    est.choi.matrix = rho;
    est.choi.dim_in = kMubDim;
    est.choi.dim_out = kMubDim;
    est.choi.normalized = true;
    est.scale = scale;
    est.objective = f;
    return est;
}

double expected_scale(const KrausProcess &process, double scale) {
    double total = 0.0;
    for (double w : kraus_weights(process)) {
        total += w;
    }
    return scale * total;
}

FidelitySummary perturbed_qpt(const KrausProcess &process, double epsilon, int trials, uint64_t seed,
                              const ReconstructConfig &config) {
    if (epsilon < 0.0 || trials < 1) {
        throw std::invalid_argument("perturbed_qpt: need epsilon >= 0 and trials >= 1");
    }
    const ChoiState ideal = kraus_to_choi(process, true);
    const std::vector<ComplexVector> states = flatten(mub_vectors());

    FidelitySummary out;
    out.fidelities.reserve(static_cast<size_t>(trials));
    for (int trial = 0; trial < trials; ++trial) {
        std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                          static_cast<uint32_t>(trial)};
        std::mt19937_64 rng(seq);
        std::vector<ComplexVector> preps;
        std::vector<ComplexVector> meas;
        for (const ComplexVector &v : states) {
            preps.push_back(hermitian_exp_i(random_unit_hermitian(rng), epsilon) * v);
        }
        for (const ComplexVector &v : states) {
            meas.push_back(hermitian_exp_i(random_unit_hermitian(rng), epsilon) * v);
        }
        const TomographyData data = simulate_measurements(process, 1.0, std::nullopt, seed, preps, meas);
        const ProcessEstimate est = reconstruct(data, config);
        out.fidelities.push_back(fidelity(est.choi, ideal));
    }

    const double n = static_cast<double>(trials);
    out.mean = std::accumulate(out.fidelities.begin(), out.fidelities.end(), 0.0) / n;
    double var = 0.0;
    for (double f : out.fidelities) {
        var += (f - out.mean) * (f - out.mean);
    }
    out.std = std::sqrt(var / n);
    const auto [lo, hi] = std::minmax_element(out.fidelities.begin(), out.fidelities.end());
    out.min = *lo;
    out.max = *hi;
    return out;
}

Eigen::MatrixXd coupling_matrix(const TomographyData &data) {
    if (data.intensities.size() != kTotalSettings) {
        throw std::invalid_argument("coupling_matrix: expected 144 intensities");
    }
    Eigen::MatrixXd out(kSettings, kSettings);
    for (int m = 0; m < kSettings; ++m) {
        for (int p = 0; p < kSettings; ++p) {
            out(m, p) = data.intensities[m * kSettings + p];
        }
    }
    return out;
}

}  // namespace ds3
