// Copyright 2026 The circular-ensembles Authors.

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/**
 * @file ensembles.hpp
 * Pseudo-random circular-ensemble operators built gate by gate.
 *
 * Conventions:
 *  - Qubits are numbered 1..n; qubit 1 is the most significant bit of a
 *    basis index and qubit n the least significant.
 *  - One CUE realization is
 *        U = L_m . N . L_{m-1} . N ... N . L_0
 *    where L_i is the i-th layer of single-qubit SU(2) rotations and N is
 *    the nearest-neighbour zz coupler. L_0 is applied first.
 *  - COE = U^T U, CSE = -Z U^T Z U, with U^T realized as the reversed
 *    sequence of transposed gates.
 *  - Two-species QCA: species A sits on odd qubits (1, 3, ...), species B on
 *    even qubits (2, 4, ...).
 */

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cem/linalg.hpp"
#include "cem/rng.hpp"

namespace cem {

enum class Ensemble { CUE, COE, CSE };
enum class Architecture { Circuit, QcaOneSpecies, QcaTwoSpecies };

/**
 * Placement of the z block inside the time-reversal unitary Z.
 *  Standard     : z on qubit n only (circuit architecture).
 *  QcaAllQubits : z on every qubit; n must be odd.
 *  QcaSpecies   : z on every qubit of one species of a two-species chain,
 *                 species A if it has an odd count, otherwise species B.
 */
enum class ZMode { Standard, QcaAllQubits, QcaSpecies };

std::string_view to_string(Ensemble e) noexcept;
std::string_view to_string(Architecture a) noexcept;
std::string_view to_string(ZMode z) noexcept;
Ensemble parse_ensemble(std::string_view s);
Architecture parse_architecture(std::string_view s);
ZMode parse_z_mode(std::string_view s);

struct RotationAngles {
    double theta = 0.0; ///< [0, pi/2]
    double phi = 0.0;   ///< [0, 2pi)
    double psi = 0.0;   ///< [0, 2pi)

    friend bool operator==(const RotationAngles &,
                           const RotationAngles &) = default;
};

/// Replaces the coupling on bond `bond` (1-based; couples qubits bond and
/// bond + 1).
struct CouplingOverride {
    unsigned bond = 1;
    double value = 0.0;
};

inline constexpr double kDefaultCoupling = 0.785398163397448309616; // pi/4
inline constexpr double kBrokenCoupling = 0.628318530717958647692;  // pi/5
inline constexpr unsigned kMaxQubits = 12;

struct CircuitSpec {
    Architecture architecture = Architecture::Circuit;
    unsigned n_qubits = 1;
    unsigned iterations = 0;
    /// (iterations + 1) layers, each with rotation_slots() triples.
    std::vector<std::vector<RotationAngles>> rotations;
    /// n_qubits - 1 bond constants.
    std::vector<double> couplings;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t dim() const noexcept {
        return std::size_t{1} << n_qubits;
    }

    friend bool operator==(const CircuitSpec &, const CircuitSpec &) = default;
};

/// Number of independent rotation triples per layer: n, 1 or 2.
unsigned rotation_slots(Architecture arch, unsigned n_qubits) noexcept;

/// Which rotation slot drives qubit `qubit` (1-based).
unsigned slot_of_qubit(Architecture arch, unsigned qubit) noexcept;

/// Throws ValidationError if the table shapes or angle ranges are off.
void validate_spec(const CircuitSpec &spec);

/// 3 per rotation triple some qubit reads, per layer, plus one per distinct
/// coupling value. For a uniform-coupling circuit with n >= 2 this is
/// 3n(m+1) + 1.
std::size_t independent_variable_count(const CircuitSpec &spec);

/// [[e^{i phi} cos t, e^{i psi} sin t], [-e^{-i psi} sin t, e^{-i phi} cos t]]
ComplexMatrix su2_rotation(double theta, double phi, double psi);
inline ComplexMatrix su2_rotation(const RotationAngles &a) {
    return su2_rotation(a.theta, a.phi, a.psi);
}

/// Draws phi, psi, xi (in that order) and returns theta = asin(sqrt(xi)).
RotationAngles sample_rotation_triple(SplitMix64 &rng);

/// Diagonal of exp(i sum_j c_j sz^j sz^{j+1}).
std::vector<cplx> nnc_diagonal(unsigned n_qubits,
                               const std::vector<double> &couplings);
ComplexMatrix nnc_operator(unsigned n_qubits,
                           const std::vector<double> &couplings);

/// Dense Kronecker product of one rotation layer.
ComplexMatrix layer_rotation(const CircuitSpec &spec, unsigned layer);

/**
 * Fills every rotation triple from a SplitMix64 stream seeded with `seed`,
 * layer by layer and slot by slot in ascending order. Couplings are pi/4
 * except for the optional override.
 */
CircuitSpec make_spec(Architecture arch, unsigned n_qubits,
                      unsigned iterations, std::uint64_t seed,
                      std::optional<CouplingOverride> coupling_override = {});

ComplexMatrix build_cue(const CircuitSpec &spec);
/// transpose(build_cue(spec)), applied as reversed transposed gates.
ComplexMatrix build_transpose_circuit(const CircuitSpec &spec);
ComplexMatrix build_coe(const CircuitSpec &spec);
ComplexMatrix build_cse(const CircuitSpec &spec, ZMode z_mode);

/// Dispatches on the ensemble; z_mode is ignored unless ensemble is CSE.
ComplexMatrix build_operator(const CircuitSpec &spec, Ensemble ensemble,
                             ZMode z_mode);

/// [[0, -1], [1, 0]]
ComplexMatrix z_single();

/// exp(-i(pi/2) sigma_z) and exp(-i(pi/2) sigma_x); their product is z.
std::pair<ComplexMatrix, ComplexMatrix> z_gate_factors();

/// Bit mask over basis-index bits (bit n - q for qubit q) that carry z.
std::size_t z_qubit_mask(unsigned n_qubits, ZMode mode);

/// Throws ValidationError when the mode cannot produce Z Z* = -I for n.
ComplexMatrix z_operator(unsigned n_qubits, ZMode mode);

/// Throws ValidationError unless the architecture may realize this Z.
void check_z_mode(Architecture arch, unsigned n_qubits, ZMode mode);

/// Z maps |k> to +-|k ^ mask>; the time-reversal partner index.
inline std::size_t time_reversal_partner(std::size_t index,
                                         std::size_t mask) noexcept {
    return index ^ mask;
}

} // namespace cem
