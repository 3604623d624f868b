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
#include "cem/ensembles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "cem/errors.hpp"
#include "eigen_interop.hpp"

namespace cem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Row-major 2x2 gate.
using Gate2 = std::array<cplx, 4>;

Gate2 to_gate(const ComplexMatrix &m) {
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

Gate2 transposed(const Gate2 &g) { return {g[0], g[2], g[1], g[3]}; }

/// target <- (I ... g_qubit ... I) . target
void apply_left(detail::MapXcd target, const Gate2 &g, unsigned qubit,
                unsigned n_qubits) {
    const Eigen::Index stride = Eigen::Index{1} << (n_qubits - qubit);
    const Eigen::Index dim = target.rows();
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> tmp;
    for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
        auto top = target.middleRows(base, stride);
        auto bottom = target.middleRows(base + stride, stride);
        tmp = top;
        top = g[0] * tmp + g[1] * bottom;
        bottom = g[2] * tmp + g[3] * bottom;
    }
}

void apply_diagonal_left(detail::MapXcd target, const std::vector<cplx> &diag) {
    for (Eigen::Index r = 0; r < target.rows(); ++r) {
        target.row(r) *= diag[static_cast<std::size_t>(r)];
    }
}

std::vector<Gate2> layer_gates(const CircuitSpec &spec, unsigned layer,
                               bool transpose_gates) {
    std::vector<Gate2> gates;
    gates.reserve(spec.rotations[layer].size());
    for (const auto &angles : spec.rotations[layer]) {
        Gate2 g = to_gate(su2_rotation(angles));
        gates.push_back(transpose_gates ? transposed(g) : g);
    }
    return gates;
}

void apply_layer(detail::MapXcd target, const CircuitSpec &spec,
                 unsigned layer, bool transpose_gates) {
    const auto gates = layer_gates(spec, layer, transpose_gates);
    for (unsigned q = 1; q <= spec.n_qubits; ++q) {
        apply_left(target, gates[slot_of_qubit(spec.architecture, q)], q,
                   spec.n_qubits);
    }
}

void apply_circuit(detail::MapXcd target, const CircuitSpec &spec) {
    const auto coupler = nnc_diagonal(spec.n_qubits, spec.couplings);
    for (unsigned layer = 0; layer < spec.iterations; ++layer) {
        apply_layer(target, spec, layer, false);
        apply_diagonal_left(target, coupler);
    }
    apply_layer(target, spec, spec.iterations, false);
}

// U^T = L_0^T N L_1^T ... N L_m^T, so L_m^T acts first. N^T = N.
void apply_transpose_circuit(detail::MapXcd target, const CircuitSpec &spec) {
    const auto coupler = nnc_diagonal(spec.n_qubits, spec.couplings);
    apply_layer(target, spec, spec.iterations, true);
    for (unsigned layer = spec.iterations; layer-- > 0;) {
        apply_diagonal_left(target, coupler);
        apply_layer(target, spec, layer, true);
    }
}

void apply_z(detail::MapXcd target, unsigned n_qubits, std::size_t mask) {
    const Gate2 z = to_gate(z_single());
    for (unsigned q = 1; q <= n_qubits; ++q) {
        if ((mask >> (n_qubits - q)) & 1U) {
            apply_left(target, z, q, n_qubits);
        }
    }
}

} // namespace

std::string_view to_string(Ensemble e) noexcept {
    switch (e) {
    case Ensemble::CUE:
        return "CUE";
    case Ensemble::COE:
        return "COE";
    case Ensemble::CSE:
        return "CSE";
    }
    return "?";
}

std::string_view to_string(Architecture a) noexcept {
    switch (a) {
    case Architecture::Circuit:
        return "circuit";
    case Architecture::QcaOneSpecies:
        return "qca1";
    case Architecture::QcaTwoSpecies:
        return "qca2";
    }
    return "?";
}

std::string_view to_string(ZMode z) noexcept {
    switch (z) {
    case ZMode::Standard:
        return "standard";
    case ZMode::QcaAllQubits:
        return "all";
    case ZMode::QcaSpecies:
        return "species";
    }
    return "?";
}

Ensemble parse_ensemble(std::string_view s) {
    for (auto e : {Ensemble::CUE, Ensemble::COE, Ensemble::CSE}) {
        if (s == to_string(e)) {
            return e;
        }
    }
    throw ValidationError("unknown ensemble '" + std::string(s) + "'");
}

Architecture parse_architecture(std::string_view s) {
    for (auto a : {Architecture::Circuit, Architecture::QcaOneSpecies,
                   Architecture::QcaTwoSpecies}) {
        if (s == to_string(a)) {
            return a;
        }
    }
    throw ValidationError("unknown architecture '" + std::string(s) + "'");
}

ZMode parse_z_mode(std::string_view s) {
    for (auto z : {ZMode::Standard, ZMode::QcaAllQubits, ZMode::QcaSpecies}) {
        if (s == to_string(z)) {
            return z;
        }
    }
    throw ValidationError("unknown z mode '" + std::string(s) + "'");
}

unsigned rotation_slots(Architecture arch, unsigned n_qubits) noexcept {
    switch (arch) {
    case Architecture::Circuit:
        return n_qubits;
    case Architecture::QcaOneSpecies:
        return 1;
    case Architecture::QcaTwoSpecies:
        return 2;
    }
    return n_qubits;
}

unsigned slot_of_qubit(Architecture arch, unsigned qubit) noexcept {
    switch (arch) {
    case Architecture::Circuit:
        return qubit - 1;
    case Architecture::QcaOneSpecies:
        return 0;
    case Architecture::QcaTwoSpecies:
        return (qubit % 2 == 1) ? 0 : 1;
    }
    return 0;
}

void validate_spec(const CircuitSpec &spec) {
    if (spec.n_qubits < 1 || spec.n_qubits > kMaxQubits) {
        throw ValidationError("n_qubits must be in [1, " +
                              std::to_string(kMaxQubits) + "]");
    }
    if (spec.rotations.size() != spec.iterations + std::size_t{1}) {
        throw ValidationError("rotation table must have iterations + 1 layers");
    }
    const unsigned slots = rotation_slots(spec.architecture, spec.n_qubits);
    for (const auto &layer : spec.rotations) {
        if (layer.size() != slots) {
            throw ValidationError("rotation layer has " +
                                  std::to_string(layer.size()) +
                                  " triples, expected " + std::to_string(slots));
        }
        for (const auto &a : layer) {
            if (!(a.theta >= 0.0 && a.theta <= std::numbers::pi / 2) ||
                !(a.phi >= 0.0 && a.phi < kTwoPi) ||
                !(a.psi >= 0.0 && a.psi < kTwoPi)) {
                throw ValidationError("rotation angle out of range");
            }
        }
    }
    if (spec.couplings.size() != spec.n_qubits - 1) {
        throw ValidationError("couplings must have n_qubits - 1 entries");
    }
    if (!std::all_of(spec.couplings.begin(), spec.couplings.end(),
                     [](double c) { return std::isfinite(c); })) {
        throw ValidationError("non-finite coupling constant");
    }
}

std::size_t independent_variable_count(const CircuitSpec &spec) {
    validate_spec(spec);
    // Only slots that some qubit reads count; a 1-qubit two-species chain
    // has no species B.
    std::set<unsigned> used;
    for (unsigned q = 1; q <= spec.n_qubits; ++q) {
        used.insert(slot_of_qubit(spec.architecture, q));
    }
    const std::size_t triples = spec.rotations.size() * used.size();
    const std::set<double> distinct(spec.couplings.begin(),
                                    spec.couplings.end());
    return 3 * triples + distinct.size();
}

ComplexMatrix su2_rotation(double theta, double phi, double psi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {{std::polar(c, phi), std::polar(s, psi)},
            {-std::polar(s, -psi), std::polar(c, -phi)}};
}

// u * 2pi can round up to 2pi for u just below 1.
double uniform_angle(SplitMix64 &rng) {
    const double a = kTwoPi * rng.uniform();
    return a < kTwoPi ? a : std::nextafter(kTwoPi, 0.0);
}

RotationAngles sample_rotation_triple(SplitMix64 &rng) {
    RotationAngles a;
    a.phi = uniform_angle(rng);
    a.psi = uniform_angle(rng);
    const double xi = rng.uniform();
    a.theta = std::asin(std::sqrt(xi));
    return a;
}

std::vector<cplx> nnc_diagonal(unsigned n_qubits,
                               const std::vector<double> &couplings) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ValidationError("nnc_operator: n_qubits out of range");
    }
    if (couplings.size() != n_qubits - 1) {
        throw ValidationError("nnc_operator: expected " +
                              std::to_string(n_qubits - 1) + " couplings, got " +
                              std::to_string(couplings.size()));
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<cplx> diag(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        double phase = 0.0;
        for (unsigned j = 1; j < n_qubits; ++j) {
            const bool bit_j = (b >> (n_qubits - j)) & 1U;
            const bool bit_next = (b >> (n_qubits - j - 1)) & 1U;
            phase += (bit_j == bit_next) ? couplings[j - 1] : -couplings[j - 1];
        }
        diag[b] = std::polar(1.0, phase);
    }
    return diag;
}

ComplexMatrix nnc_operator(unsigned n_qubits,
                           const std::vector<double> &couplings) {
    const auto diag = nnc_diagonal(n_qubits, couplings);
    return ComplexMatrix::diagonal(diag);
}

ComplexMatrix layer_rotation(const CircuitSpec &spec, unsigned layer) {
    if (layer > spec.iterations || layer >= spec.rotations.size()) {
        throw ValidationError("layer_rotation: layer " + std::to_string(layer) +
                              " out of range");
    }
    ComplexMatrix out = su2_rotation(
        spec.rotations[layer][slot_of_qubit(spec.architecture, 1)]);
    for (unsigned q = 2; q <= spec.n_qubits; ++q) {
        out = kron(out, su2_rotation(spec.rotations[layer][slot_of_qubit(
                            spec.architecture, q)]));
    }
    return out;
}

CircuitSpec make_spec(Architecture arch, unsigned n_qubits,
                      unsigned iterations, std::uint64_t seed,
                      std::optional<CouplingOverride> coupling_override) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ValidationError("make_spec: n_qubits must be in [1, " +
                              std::to_string(kMaxQubits) + "]");
    }
    CircuitSpec spec;
    spec.architecture = arch;
    spec.n_qubits = n_qubits;
    spec.iterations = iterations;
    spec.seed = seed;
    spec.couplings.assign(n_qubits - 1, kDefaultCoupling);
    if (coupling_override) {
        if (coupling_override->bond < 1 ||
            coupling_override->bond >= n_qubits) {
            throw ValidationError("make_spec: coupling override bond " +
                                  std::to_string(coupling_override->bond) +
                                  " out of range [1, " +
                                  std::to_string(n_qubits - 1) + "]");
        }
        spec.couplings[coupling_override->bond - 1] = coupling_override->value;
    }

    SplitMix64 rng(seed);
    const unsigned slots = rotation_slots(arch, n_qubits);
    spec.rotations.resize(iterations + std::size_t{1});
    for (auto &layer : spec.rotations) {
        layer.reserve(slots);
        for (unsigned s = 0; s < slots; ++s) {
            layer.push_back(sample_rotation_triple(rng));
        }
    }
    return spec;
}

ComplexMatrix build_cue(const CircuitSpec &spec) {
    validate_spec(spec);
    ComplexMatrix u = ComplexMatrix::identity(spec.dim());
    apply_circuit(detail::view(u), spec);
    return u;
}

ComplexMatrix build_transpose_circuit(const CircuitSpec &spec) {
    validate_spec(spec);
    ComplexMatrix u = ComplexMatrix::identity(spec.dim());
    apply_transpose_circuit(detail::view(u), spec);
    return u;
}

ComplexMatrix build_coe(const CircuitSpec &spec) {
    ComplexMatrix u = build_cue(spec);
    apply_transpose_circuit(detail::view(u), spec);
    return u;
}

ComplexMatrix build_cse(const CircuitSpec &spec, ZMode z_mode) {
    validate_spec(spec);
    check_z_mode(spec.architecture, spec.n_qubits, z_mode);
    const std::size_t mask = z_qubit_mask(spec.n_qubits, z_mode);

    // -Z U^T Z U, applied right to left.
    ComplexMatrix u = build_cue(spec);
    auto target = detail::view(u);
    apply_z(target, spec.n_qubits, mask);
    apply_transpose_circuit(target, spec);
    apply_z(target, spec.n_qubits, mask);
    u *= -1.0;
    return u;
}

ComplexMatrix build_operator(const CircuitSpec &spec, Ensemble ensemble,
                             ZMode z_mode) {
    switch (ensemble) {
    case Ensemble::CUE:
        return build_cue(spec);
    case Ensemble::COE:
        return build_coe(spec);
    case Ensemble::CSE:
        return build_cse(spec, z_mode);
    }
    throw ValidationError("build_operator: unknown ensemble");
}

ComplexMatrix z_single() { return {{0.0, -1.0}, {1.0, 0.0}}; }

std::pair<ComplexMatrix, ComplexMatrix> z_gate_factors() {
    const cplx i{0.0, 1.0};
    ComplexMatrix rz{{-i, 0.0}, {0.0, i}};
    ComplexMatrix rx{{0.0, -i}, {-i, 0.0}};
    return {std::move(rz), std::move(rx)};
}

std::size_t z_qubit_mask(unsigned n_qubits, ZMode mode) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ValidationError("z_operator: n_qubits out of range");
    }
    const std::size_t all = (std::size_t{1} << n_qubits) - 1;
    switch (mode) {
    case ZMode::Standard:
        return 1;
    case ZMode::QcaAllQubits:
        if (n_qubits % 2 == 0) {
            throw ValidationError(
                "z on all qubits needs an odd qubit count (n = " +
                std::to_string(n_qubits) + " gives Z Z* = +I)");
        }
        return all;
    case ZMode::QcaSpecies: {
        // Species A (odd qubits) occupies the bits n-1, n-3, ...
        std::size_t species_a = 0;
        for (unsigned q = 1; q <= n_qubits; q += 2) {
            species_a |= std::size_t{1} << (n_qubits - q);
        }
        const std::size_t species_b = all & ~species_a;
        if (std::popcount(species_a) % 2 == 1) {
            return species_a;
        }
        if (std::popcount(species_b) % 2 == 1) {
            return species_b;
        }
        throw ValidationError("neither species has an odd qubit count (n = " +
                              std::to_string(n_qubits) + ")");
    }
    }
    throw ValidationError("z_operator: unknown mode");
}

ComplexMatrix z_operator(unsigned n_qubits, ZMode mode) {
    const std::size_t mask = z_qubit_mask(n_qubits, mode);
    ComplexMatrix z = ComplexMatrix::identity(std::size_t{1} << n_qubits);
    apply_z(detail::view(z), n_qubits, mask);
    return z;
}

void check_z_mode(Architecture arch, unsigned n_qubits, ZMode mode) {
    if (mode == ZMode::Standard && arch != Architecture::Circuit) {
        throw ValidationError(
            "standard Z addresses a single qubit, which a QCA cannot do");
    }
    if (mode == ZMode::QcaSpecies && arch != Architecture::QcaTwoSpecies) {
        throw ValidationError("species Z requires the two-species QCA");
    }
    z_qubit_mask(n_qubits, mode);
}

} // namespace cem
