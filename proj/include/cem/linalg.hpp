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
 * @file linalg.hpp
 * Dense complex matrices and the unitary eigendecomposition everything else
 * is built on.
 *
 * Storage is row-major with interleaved (re, im) doubles; std::complex<double>
 * is layout-compatible with double[2], so entries() can be written to disk
 * as-is on little-endian hosts.
 */

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cem {

using cplx = std::complex<double>;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    /// Zero matrix. Both dimensions must be positive.
    ComplexMatrix(std::size_t rows, std::size_t cols);

    /// Takes ownership of row-major entries; validates count and finiteness.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    /// Literal construction, e.g. {{0, -1}, {1, 0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const cplx> diag);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

    cplx &operator()(std::size_t r, std::size_t c) noexcept {
        return entries_[r * cols_ + c];
    }
    const cplx &operator()(std::size_t r, std::size_t c) const noexcept {
        return entries_[r * cols_ + c];
    }

    [[nodiscard]] std::span<cplx> entries() noexcept { return entries_; }
    [[nodiscard]] std::span<const cplx> entries() const noexcept {
        return entries_;
    }

    [[nodiscard]] bool all_finite() const noexcept;

    ComplexMatrix &operator*=(cplx s) noexcept;

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

/// Eigenangles in [0, 2pi) ascending, with unit eigenvectors as columns.
struct SpectralDecomposition {
    std::vector<double> angles;
    ComplexMatrix vectors;
    /// max_k || U v_k - e^{i angle_k} v_k ||_2
    double residual = 0.0;
};

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);

/// Kronecker product; a's index is the most significant.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix transpose(const ComplexMatrix &a);
ComplexMatrix adjoint(const ComplexMatrix &a);
ComplexMatrix conj(const ComplexMatrix &a);

/// max_ij |a_ij - b_ij|. Shapes must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// max_ij |(u^dagger u - I)_ij|.
double unitarity_defect(const ComplexMatrix &u);

/// Residual target of eig_unitary.
inline constexpr double kEigResidualBound = 1e-9;
/// Gap on cos(theta) below which eigenvalues of (U + U^dagger)/2 are treated
/// as one cluster and resolved by the anti-Hermitian part.
inline constexpr double kEigClusterGap = 1e-8;

/**
 * Eigendecomposition of a unitary matrix through the commuting Hermitian
 * pair A = (U + U^dagger)/2, B = (U - U^dagger)/(2i).
 *
 * A is diagonalized first; every run of A-eigenvalues separated by less than
 * kEigClusterGap is re-diagonalized through the restriction of B. Angles come
 * from the Rayleigh quotients v^dagger U v. Throws ValidationError for
 * non-square or non-unitary input (defect > 1e-9 N) and NumericalError if the
 * residual bound cannot be met.
 */
SpectralDecomposition eig_unitary(const ComplexMatrix &u);

/// Permutation |b_1 ... b_n> -> |b_n ... b_1>, qubit 1 most significant.
ComplexMatrix bit_reversal_permutation(unsigned n_qubits);

/// Index map behind bit_reversal_permutation.
std::size_t reverse_bits(std::size_t index, unsigned n_bits) noexcept;

} // namespace cem
