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
#include "cem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "cem/errors.hpp"
#include "eigen_interop.hpp"

namespace cem {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw ValidationError("ComplexMatrix: dimensions must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw ValidationError("ComplexMatrix: dimensions must be positive");
    }
    if (entries_.size() != rows * cols) {
        throw ValidationError("ComplexMatrix: expected " +
                              std::to_string(rows * cols) + " entries, got " +
                              std::to_string(entries_.size()));
    }
    if (!all_finite()) {
        throw ValidationError("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) {
        throw ValidationError("ComplexMatrix: dimensions must be positive");
    }
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw ValidationError("ComplexMatrix: ragged initializer");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](const cplx &z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) noexcept {
    for (auto &z : entries_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw ValidationError("matmul: dimension mismatch (" +
                              std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + " times " +
                              std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()) + ")");
    }
    ComplexMatrix out(a.rows(), b.cols());
    detail::view(out).noalias() = detail::view(a) * detail::view(b);
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix transpose(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

ComplexMatrix conj(const ComplexMatrix &a) {
    ComplexMatrix out = a;
    for (auto &z : out.entries()) {
        z = std::conj(z);
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("max_abs_diff: shape mismatch");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

double unitarity_defect(const ComplexMatrix &u) {
    if (!u.is_square()) {
        throw ValidationError("unitarity_defect: matrix is not square");
    }
    const auto n = static_cast<Eigen::Index>(u.rows());
    const Eigen::MatrixXcd gram = detail::view(u).adjoint() * detail::view(u);
    return (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
    if (theta < 0.0) {
        theta += kTwoPi;
    }
    // -tiny + 2pi rounds to 2pi
    if (theta >= kTwoPi) {
        theta = 0.0;
    }
    return theta;
}

// Rotates each cluster of near-equal A-eigenvalues onto eigenvectors of the
// restriction of B.
void resolve_clusters(const Eigen::VectorXd &a_evals, const Eigen::MatrixXcd &b,
                      double gap, Eigen::MatrixXcd &vectors) {
    const Eigen::Index n = a_evals.size();
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 1;
        while (stop < n && a_evals(stop) - a_evals(stop - 1) < gap) {
            ++stop;
        }
        const Eigen::Index width = stop - start;
        if (width > 1) {
            const Eigen::MatrixXcd basis = vectors.middleCols(start, width);
            Eigen::MatrixXcd restricted = basis.adjoint() * b * basis;
            restricted = (0.5 * (restricted + restricted.adjoint())).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sub(restricted);
            vectors.middleCols(start, width) = basis * sub.eigenvectors();
        }
        start = stop;
    }
}

} // namespace

SpectralDecomposition eig_unitary(const ComplexMatrix &u) {
    if (!u.is_square()) {
        throw ValidationError("eig_unitary: matrix is not square");
    }
    const auto dim = u.rows();
    const double defect = unitarity_defect(u);
    if (defect > 1e-9 * static_cast<double>(dim)) {
        throw ValidationError("eig_unitary: input is not unitary (defect " +
                              std::to_string(defect) + ")");
    }

    const Eigen::MatrixXcd mat = detail::view(u);
    const auto n = static_cast<Eigen::Index>(dim);
    double best_residual = std::numeric_limits<double>::infinity();
    bool solver_failed = false;

    // The QR iteration occasionally stalls on structured inputs. e^{i alpha} U
    // has the same eigenvectors, so a stall is retried on a rotated spectrum;
    // angles always come from U itself.
    for (double alpha : {0.0, 1.0, 2.0, 3.0}) {
        const Eigen::MatrixXcd rotated = mat * std::polar(1.0, alpha);
        const Eigen::MatrixXcd herm = 0.5 * (rotated + rotated.adjoint());
        const Eigen::MatrixXcd anti =
            (rotated - rotated.adjoint()) * std::complex<double>(0.0, -0.5);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
        if (solver.info() != Eigen::Success) {
            solver_failed = true;
            continue;
        }

        // Clusters wider than the nominal gap are retried with coarser
        // grouping; a wider cluster only improves the separation from the
        // rest of the spectrum.
        for (double gap : {kEigClusterGap, 1e-6, 1e-4, 1e-2}) {
            Eigen::MatrixXcd vectors = solver.eigenvectors();
            resolve_clusters(solver.eigenvalues(), anti, gap, vectors);
            vectors.colwise().normalize();

            const Eigen::MatrixXcd image = mat * vectors;
            std::vector<double> angles(dim);
            double residual = 0.0;
            for (Eigen::Index k = 0; k < n; ++k) {
                const cplx rayleigh = vectors.col(k).dot(image.col(k));
                const double theta = std::atan2(rayleigh.imag(), rayleigh.real());
                const cplx phase = std::polar(1.0, theta);
                residual = std::max(
                    residual, (image.col(k) - phase * vectors.col(k)).norm());
                angles[static_cast<std::size_t>(k)] = wrap_angle(theta);
            }
            best_residual = std::min(best_residual, residual);
            if (residual > kEigResidualBound) {
                continue;
            }

            std::vector<std::size_t> order(dim);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t x, std::size_t y) {
                                 return angles[x] < angles[y];
                             });

            SpectralDecomposition out;
            out.angles.resize(dim);
            out.vectors = ComplexMatrix(dim, dim);
            auto dst = detail::view(out.vectors);
            for (std::size_t k = 0; k < dim; ++k) {
                out.angles[k] = angles[order[k]];
                dst.col(static_cast<Eigen::Index>(k)) =
                    vectors.col(static_cast<Eigen::Index>(order[k]));
            }
            out.residual = residual;
            return out;
        }
    }
    if (solver_failed && !std::isfinite(best_residual)) {
        throw NumericalError("eig_unitary: Hermitian eigensolver failed");
    }
    throw NumericalError("eig_unitary: residual " +
                         std::to_string(best_residual) + " exceeds bound");
}

std::size_t reverse_bits(std::size_t index, unsigned n_bits) noexcept {
    std::size_t out = 0;
    for (unsigned b = 0; b < n_bits; ++b) {
        out = (out << 1U) | ((index >> b) & 1U);
    }
    return out;
}

ComplexMatrix bit_reversal_permutation(unsigned n_qubits) {
    if (n_qubits == 0) {
        throw ValidationError("bit_reversal_permutation: n must be >= 1");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    ComplexMatrix m(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        m(reverse_bits(b, n_qubits), b) = 1.0;
    }
    return m;
}

} // namespace cem
