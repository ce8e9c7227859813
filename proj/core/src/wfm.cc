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

#include "ds3/wfm.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "ds3/channel.h"
#include "ds3/tomography.h"

namespace ds3 {

namespace {

ComplexMatrix phase_plane(const RealVector &phi) {
    ComplexVector d(phi.size());
    for (Eigen::Index m = 0; m < phi.size(); ++m) {
        d(m) = std::polar(1.0, phi(m));
    }
    return d.asDiagonal();
}

void require_ports(const std::array<int, kSignalPorts> &ports, int n, const char *which) {
    std::set<int> seen;
    for (int p : ports) {
        if (p < 0 || p >= n) {
            throw std::invalid_argument(std::string("PhotonicCircuit: ") + which + " port " + std::to_string(p) +
                                        " out of range");
        }
        if (!seen.insert(p).second) {
            throw std::invalid_argument(std::string("PhotonicCircuit: duplicate ") + which + " port " +
                                        std::to_string(p));
        }
    }
}

// Columns are the input basis fields e_{ports_in[k]}.
ComplexMatrix input_fields(const PhotonicCircuit &c) {
    ComplexMatrix a = ComplexMatrix::Zero(c.n_modes, kSignalPorts);
    for (int k = 0; k < kSignalPorts; ++k) {
        a(c.ports_in[k], k) = 1.0;
    }
    return a;
}

// Columns are the desired output fields sum_r target(r, k) e_{ports_out[r]}.
ComplexMatrix target_fields(const PhotonicCircuit &c, const ComplexMatrix &target) {
    ComplexMatrix t = ComplexMatrix::Zero(c.n_modes, kSignalPorts);
    for (int k = 0; k < kSignalPorts; ++k) {
        for (int r = 0; r < kSignalPorts; ++r) {
            t(c.ports_out[r], k) = target(r, k);
        }
    }
    return t;
}

// Per-pixel overlap coefficients c_m = sum_k conj(b_k[m]) a_k[m].
ComplexVector pixel_overlaps(const ComplexMatrix &forward, const ComplexMatrix &backward) {
    return backward.conjugate().cwiseProduct(forward).rowwise().sum();
}

// Overlap-maximizing phases for one plane; pixels with no overlap keep their phase.
RealVector matched_phases(const RealVector &phi, const ComplexVector &coeffs) {
    RealVector proposal = phi;
    for (Eigen::Index m = 0; m < phi.size(); ++m) {
        if (std::abs(coeffs(m)) > 0.0) {
            proposal(m) = -std::arg(coeffs(m));
        }
    }
    return proposal;
}

double circuit_objective(const PhotonicCircuit &c, const ComplexMatrix &target) {
    return std::abs((target.adjoint() * embedded_block(c)).trace()) / kSignalPorts;
}

}  // namespace

void validate(const PhotonicCircuit &c) {
    if (c.n_modes < kSignalPorts) {
        throw std::invalid_argument("PhotonicCircuit: need at least 4 modes");
    }
    for (int j = 0; j < 2; ++j) {
        if (c.phases[j].size() != c.n_modes) {
            throw std::invalid_argument("PhotonicCircuit: phase plane length mismatch");
        }
        if (c.mixers[j].rows() != c.n_modes || c.mixers[j].cols() != c.n_modes) {
            throw std::invalid_argument("PhotonicCircuit: mixer shape mismatch");
        }
        if (!is_unitary(c.mixers[j], 1e-9)) {
            throw std::invalid_argument("PhotonicCircuit: mixer is not unitary");
        }
    }
    require_ports(c.ports_in, c.n_modes, "input");
    require_ports(c.ports_out, c.n_modes, "output");
}

ComplexMatrix random_mode_mixer(int n, uint64_t seed) {
    if (n < kSignalPorts) {
        throw std::invalid_argument("random_mode_mixer: need n >= 4, got " + std::to_string(n));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            g(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        if (std::abs(d) > 0.0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return q;
}

ComplexMatrix dft_matrix(int n) {
    if (n < 1) {
        throw std::invalid_argument("dft_matrix: n must be positive");
    }
    ComplexMatrix f(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            f(j, k) = std::polar(norm, 2.0 * std::numbers::pi * ((j * k) % n) / n);
        }
    }
    return f;
}

PhotonicCircuit make_circuit(int n, uint64_t seed, SecondMixer second) {
    PhotonicCircuit c;
    c.n_modes = n;
    c.phases = {RealVector::Zero(n), RealVector::Zero(n)};
    c.mixers[0] = random_mode_mixer(n, seed);
    switch (second) {
        case SecondMixer::identity:
            c.mixers[1] = ComplexMatrix::Identity(n, n);
            break;
        case SecondMixer::dft:
            c.mixers[1] = dft_matrix(n);
            break;
        case SecondMixer::haar:
            c.mixers[1] = random_mode_mixer(n, seed + 1);
            break;
    }
    return c;
}

PhotonicCircuit embed_unitary_circuit(int n, const ComplexMatrix &u) {
    if (u.rows() != u.cols() || u.rows() > n || u.rows() < kSignalPorts) {
        throw std::invalid_argument("embed_unitary_circuit: unitary must be square with 4 <= size <= n");
    }
    PhotonicCircuit c;
    c.n_modes = n;
    c.phases = {RealVector::Zero(n), RealVector::Zero(n)};
    c.mixers[0] = ComplexMatrix::Identity(n, n);
    c.mixers[0].topLeftCorner(u.rows(), u.cols()) = u;
    c.mixers[1] = ComplexMatrix::Identity(n, n);
    validate(c);
    return c;
}

ComplexMatrix circuit_transfer(const PhotonicCircuit &c) {
    validate(c);
    return c.mixers[1] * phase_plane(c.phases[1]) * c.mixers[0] * phase_plane(c.phases[0]);
}

ComplexMatrix embedded_block(const PhotonicCircuit &c) {
    const ComplexMatrix t = circuit_transfer(c);
    ComplexMatrix block(kSignalPorts, kSignalPorts);
    for (int r = 0; r < kSignalPorts; ++r) {
        for (int k = 0; k < kSignalPorts; ++k) {
            block(r, k) = t(c.ports_out[r], c.ports_in[k]);
        }
    }
    return block;
}

double block_fidelity(const ComplexMatrix &block, const ComplexMatrix &target) {
    if (block.rows() != target.rows() || block.cols() != target.cols()) {
        throw std::invalid_argument("block_fidelity: shape mismatch");
    }
    const double norm = block.norm();
    if (norm == 0.0) {
        return 0.0;
    }
    const double k = static_cast<double>(target.cols());
    return std::abs((target.adjoint() * block).trace()) / (std::sqrt(k) * norm);
}

WfmResult wfm_optimize(const PhotonicCircuit &c, const ComplexMatrix &target, const WfmConfig &config) {
    validate(c);
    if (target.rows() != kSignalPorts || target.cols() != kSignalPorts) {
        throw std::invalid_argument("wfm_optimize: target must be 4 x 4");
    }
    if (!is_unitary(target, 1e-9)) {
        throw std::invalid_argument("wfm_optimize: target must be unitary");
    }
    if (config.sweeps < 0) {
        throw std::invalid_argument("wfm_optimize: sweeps must be non-negative");
    }

    WfmResult out{c, {}};
    PhotonicCircuit &circ = out.circuit;
    const ComplexMatrix inputs = input_fields(circ);
    const ComplexMatrix targets = target_fields(circ, target);
    const ComplexMatrix &u1 = circ.mixers[0];
    const ComplexMatrix &u2 = circ.mixers[1];
    const ComplexMatrix back_through_u2 = u2.adjoint() * targets;

    WfmReport &report = out.report;
    double objective = circuit_objective(circ, target);
    report.objective_trace.push_back(objective);

    // A plane update is kept only if the full-circuit objective does not drop, which keeps the
    // trace monotone under rounding.
    double current = objective;
    const auto try_plane = [&](int plane, const ComplexVector &coeffs) {
        const RealVector previous = circ.phases[plane];
        circ.phases[plane] = matched_phases(previous, coeffs);
        const double value = circuit_objective(circ, target);
        if (value >= current) {
            current = value;
        } else {
            circ.phases[plane] = previous;
        }
    };

    for (int sweep = 0; sweep < config.sweeps; ++sweep) {
        // Plane 1: inputs arrive unchanged, targets return through U2, P2 and U1.
        const ComplexMatrix back1 = u1.adjoint() * (phase_plane(circ.phases[1]).adjoint() * back_through_u2);
        try_plane(0, pixel_overlaps(inputs, back1));

        // Plane 2: inputs pass P1 and U1, targets return through U2.
        const ComplexMatrix forward2 = u1 * (phase_plane(circ.phases[0]) * inputs);
        try_plane(1, pixel_overlaps(forward2, back_through_u2));

        const double next = current;
        report.objective_trace.push_back(next);
        report.iterations_run = sweep + 1;
        const bool stalled = next - objective <= config.tol * std::max(objective, 1e-300);
        objective = next;
        if (stalled) {
            break;
        }
    }

    report.realized_block = embedded_block(circ);
    report.final_fidelity = block_fidelity(report.realized_block, target);
    return out;
}

WfmDesign wfm_design(int n_modes, const ComplexMatrix &target, const WfmDesignConfig &config) {
    if (config.port_candidates < 1) {
        throw std::invalid_argument("wfm_design: need at least one port candidate");
    }
    const PhotonicCircuit base = make_circuit(n_modes, config.seed, config.second);
    std::seed_seq seq{static_cast<uint32_t>(config.seed), static_cast<uint32_t>(config.seed >> 32), 0x5eedu};
    std::mt19937_64 rng(seq);

    WfmDesign design;
    std::vector<int> modes(static_cast<size_t>(n_modes));
    for (int candidate = 0; candidate < config.port_candidates; ++candidate) {
        std::array<int, kSignalPorts> ports{0, 1, 2, 3};
        if (candidate > 0) {
            std::iota(modes.begin(), modes.end(), 0);
            std::shuffle(modes.begin(), modes.end(), rng);
            std::copy_n(modes.begin(), kSignalPorts, ports.begin());
        }
        PhotonicCircuit c = base;
        c.ports_out = ports;
        WfmResult result = wfm_optimize(c, target, {config.sweeps, config.tol});
        design.candidate_ports.push_back(ports);
        design.candidate_fidelities.push_back(result.report.final_fidelity);
        if (candidate == 0 || result.report.final_fidelity > design.best.report.final_fidelity) {
            design.best = std::move(result);
        }
    }
    return design;
}

std::vector<double> random_baseline(const PhotonicCircuit &c, const ComplexMatrix &target, int draws,
                                    uint64_t seed) {
    validate(c);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> out;
    out.reserve(static_cast<size_t>(std::max(draws, 0)));
    for (int i = 0; i < draws; ++i) {
        PhotonicCircuit r = c;
        for (auto &plane : r.phases) {
            for (Eigen::Index m = 0; m < plane.size(); ++m) {
                plane(m) = angle(rng);
            }
        }
        out.push_back(block_fidelity(embedded_block(r), target));
    }
    return out;
}

Certification certify_circuit(const PhotonicCircuit &c, const ComplexMatrix &target_op,
                              const CertifyConfig &config) {
    if (target_op.rows() != kMubDim || target_op.cols() != kMubDim) {
        throw std::invalid_argument("certify_circuit: target operator must be 3 x 3");
    }
    const ComplexMatrix block = embedded_block(c);
    const KrausProcess realized{{block.topLeftCorner(kMubDim, kMubDim)}};
    const ChoiState ideal = kraus_to_choi(KrausProcess{{target_op}}, true);

    Certification out;
    out.direct_fidelity = fidelity(ideal, kraus_to_choi(realized, true));
    const std::optional<long> shots = config.shots > 0 ? std::optional<long>(config.shots) : std::nullopt;
    const ProcessEstimate est = reconstruct(simulate_measurements(realized, 1.0, shots, config.seed));
    out.fidelity = fidelity(ideal, est.choi);
    out.purity = purity(est.choi);
    return out;
}

}  // namespace ds3
