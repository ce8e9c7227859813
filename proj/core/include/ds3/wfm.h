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

#ifndef DS3_WFM_H
#define DS3_WFM_H

#include <array>
#include <cstdint>
#include <vector>

#include "ds3/numerics.h"

namespace ds3 {

inline constexpr int kSignalPorts = 4;

/// Two programmable phase planes sandwiching fixed mode mixers: T = U2 P2 U1 P1.
struct PhotonicCircuit {
    int n_modes = 0;
    std::array<RealVector, 2> phases;     // radians, P_j = diag(exp(i phases[j]))
    std::array<ComplexMatrix, 2> mixers;  // U_1, U_2
    std::array<int, kSignalPorts> ports_in{0, 1, 2, 3};
    std::array<int, kSignalPorts> ports_out{0, 1, 2, 3};
};

/// Throws std::invalid_argument for wrong shapes, non-unitary mixers, or invalid ports.
void validate(const PhotonicCircuit &c);

/// Haar unitary from the QR factorization of a seeded complex Gaussian matrix.
/// Throws std::invalid_argument for n < 4.
ComplexMatrix random_mode_mixer(int n, uint64_t seed);

/// Unitary discrete Fourier transform.
ComplexMatrix dft_matrix(int n);

enum class SecondMixer { identity, dft, haar };

/// Zero phases, first mixer random_mode_mixer(n, seed), second mixer of the requested kind
/// (the Haar option draws from seed + 1).
PhotonicCircuit make_circuit(int n, uint64_t seed, SecondMixer second = SecondMixer::dft);

/// Circuit with zero phases, first mixer u (+) 1 and identity second mixer.
PhotonicCircuit embed_unitary_circuit(int n, const ComplexMatrix &u);

ComplexMatrix circuit_transfer(const PhotonicCircuit &c);

/// The 4 x 4 submatrix of circuit_transfer on (ports_out rows, ports_in cols).
ComplexMatrix embedded_block(const PhotonicCircuit &c);

/// |Tr(target^dagger block)| / (sqrt(k) ||block||_F), invariant under block -> gamma block.
double block_fidelity(const ComplexMatrix &block, const ComplexMatrix &target);

struct WfmConfig {
    int sweeps = 200;
    double tol = 1e-12;
};

struct WfmReport {
    int iterations_run = 0;
    std::vector<double> objective_trace;  // initial objective, then one value per sweep
    double final_fidelity = 0.0;
    ComplexMatrix realized_block;
};

struct WfmResult {
    PhotonicCircuit circuit;
    WfmReport report;
};

/// Wavefront matching: each sweep updates plane 1 then plane 2, setting every pixel phase to
/// the value maximizing the summed overlap between forward-propagated inputs and
/// back-propagated targets. Objective = |sum_k <target_k|realized_k>| / 4.
WfmResult wfm_optimize(const PhotonicCircuit &c, const ComplexMatrix &target, const WfmConfig &config = {});

struct WfmDesignConfig {
    int sweeps = 200;
    double tol = 1e-12;
    uint64_t seed = 0;
    int port_candidates = 8;
    SecondMixer second = SecondMixer::dft;
};

struct WfmDesign {
    WfmResult best;
    std::vector<std::array<int, kSignalPorts>> candidate_ports;
    std::vector<double> candidate_fidelities;
};

/// Optimizes make_circuit(n, seed) for several output-port placements (ports 0-3 first, then
/// seeded random subsets) and keeps the highest final fidelity.
WfmDesign wfm_design(int n_modes, const ComplexMatrix &target, const WfmDesignConfig &config = {});

/// block_fidelity of circuits with uniformly random phases, one per draw.
std::vector<double> random_baseline(const PhotonicCircuit &c, const ComplexMatrix &target, int draws,
                                    uint64_t seed);

struct CertifyConfig {
    long shots = 0;
    uint64_t seed = 0;
};

struct Certification {
    double fidelity = 0.0;         // after tomography
    double purity = 0.0;           // after tomography
    double direct_fidelity = 0.0;  // exact Choi, no tomography
};

/// Postselected 3 -> 3 process from the first three signal ports (auxiliary port discarded),
/// certified by simulate_measurements + reconstruct against the ideal target_op process.
Certification certify_circuit(const PhotonicCircuit &c, const ComplexMatrix &target_op,
                              const CertifyConfig &config = {});

}  // namespace ds3

#endif
