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
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"

#include "cem/errors.hpp"
#include "cem/io.hpp"
#include "cem/linalg.hpp"
#include "cem/reference.hpp"
#include "cem/rng.hpp"

using namespace cem;
using std::numbers::pi;

namespace {

const cplx I{0.0, 1.0};

ComplexMatrix z2() { return {{0.0, -1.0}, {1.0, 0.0}}; }

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols,
                            SplitMix64 &rng) {
    ComplexMatrix m(rows, cols);
    for (auto &z : m.entries()) {
        z = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    return m;
}

// ||U - V diag(e^{i theta}) V^dagger||_max
double reconstruction_error(const ComplexMatrix &u,
                            const SpectralDecomposition &d) {
    ComplexMatrix scaled = d.vectors;
    for (std::size_t c = 0; c < scaled.cols(); ++c) {
        const cplx phase = std::polar(1.0, d.angles[c]);
        for (std::size_t r = 0; r < scaled.rows(); ++r) {
            scaled(r, c) *= phase;
        }
    }
    return max_abs_diff(u, matmul(scaled, adjoint(d.vectors)));
}

void check_decomposition(const ComplexMatrix &u,
                         const SpectralDecomposition &d) {
    REQUIRE(d.angles.size() == u.rows());
    CHECK(d.residual <= kEigResidualBound);
    for (std::size_t k = 0; k < d.angles.size(); ++k) {
        CHECK(d.angles[k] >= 0.0);
        CHECK(d.angles[k] < 2.0 * pi);
        if (k > 0) {
            CHECK(d.angles[k - 1] <= d.angles[k]);
        }
        double norm2 = 0.0;
        for (std::size_t r = 0; r < u.rows(); ++r) {
            norm2 += std::norm(d.vectors(r, k));
        }
        CHECK(std::abs(std::sqrt(norm2) - 1.0) <= 1e-12);
    }
    CHECK(reconstruction_error(u, d) <= 1e-9);
}

} // namespace

TEST_CASE("ComplexMatrix construction validates shape and finiteness") {
    CHECK_THROWS_AS(ComplexMatrix(0, 2), ValidationError);
    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), ValidationError);
    CHECK_THROWS_AS(
        ComplexMatrix(1, 1, {cplx(std::numeric_limits<double>::quiet_NaN(), 0)}),
        ValidationError);
    const ComplexMatrix m(2, 3);
    CHECK(m.entries().size() == 6);
}

TEST_CASE("matmul") {
    CHECK(matmul(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) ==
          ComplexMatrix::identity(2));

    ComplexMatrix minus_id = ComplexMatrix::identity(2);
    minus_id *= -1.0;
    CHECK(matmul(z2(), z2()) == minus_id);

    const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
    const ComplexMatrix zdiag{{1.0, 0.0}, {0.0, -1.0}};
    CHECK(matmul(x, zdiag) == z2());

    CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)),
                    ValidationError);
}

TEST_CASE("kron") {
    CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) ==
          ComplexMatrix::identity(4));

    const ComplexMatrix blockdiag = kron(ComplexMatrix::identity(2), z2());
    const ComplexMatrix expected_blockdiag{{0, -1, 0, 0},
                                           {1, 0, 0, 0},
                                           {0, 0, 0, -1},
                                           {0, 0, 1, 0}};
    CHECK(blockdiag == expected_blockdiag);

    const ComplexMatrix expected{{0, 0, -1, 0},
                                 {0, 0, 0, -1},
                                 {1, 0, 0, 0},
                                 {0, 1, 0, 0}};
    CHECK(kron(z2(), ComplexMatrix::identity(2)) == expected);
}

TEST_CASE("kron is associative on random inputs") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_matrix(1 + rng() % 3, 1 + rng() % 3, rng);
        const auto b = random_matrix(1 + rng() % 3, 1 + rng() % 3, rng);
        const auto c = random_matrix(1 + rng() % 3, 1 + rng() % 3, rng);
        CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-14);
    }
}

TEST_CASE("transpose, adjoint and conj") {
    ComplexMatrix minus_z = z2();
    minus_z *= -1.0;
    CHECK(transpose(z2()) == minus_z);
    CHECK(adjoint(ComplexMatrix::identity(3)) == ComplexMatrix::identity(3));
    const ComplexMatrix m{{I, 0.0}, {0.0, -I}};
    const ComplexMatrix mc{{-I, 0.0}, {0.0, I}};
    CHECK(conj(m) == mc);

    SplitMix64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_matrix(1 + rng() % 5, 1 + rng() % 5, rng);
        CHECK(transpose(transpose(a)) == a);
        CHECK(adjoint(a) == conj(transpose(a)));
    }
}

TEST_CASE("unitarity_defect") {
    CHECK(unitarity_defect(ComplexMatrix::identity(4)) == 0.0);
    CHECK(unitarity_defect(z2()) == 0.0);
    const ComplexMatrix d{{1.0, 0.0}, {0.0, 2.0}};
    CHECK(unitarity_defect(d) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(unitarity_defect(ComplexMatrix(2, 3)), ValidationError);
}

TEST_CASE("eig_unitary on small closed-form cases") {
    SUBCASE("identity is fully degenerate") {
        const auto u = ComplexMatrix::identity(4);
        const auto d = eig_unitary(u);
        for (double a : d.angles) {
            CHECK(a == 0.0);
        }
        check_decomposition(u, d);
    }
    SUBCASE("z has eigenvalues +-i") {
        const auto d = eig_unitary(z2());
        CHECK(d.angles[0] == doctest::Approx(pi / 2).epsilon(1e-14));
        CHECK(d.angles[1] == doctest::Approx(3 * pi / 2).epsilon(1e-14));
        check_decomposition(z2(), d);
    }
    SUBCASE("sigma_x has eigenvalues +-1") {
        const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
        const auto d = eig_unitary(x);
        CHECK(d.angles[0] == doctest::Approx(0.0));
        CHECK(d.angles[1] == doctest::Approx(pi).epsilon(1e-14));
        check_decomposition(x, d);
    }
}

TEST_CASE("eig_unitary rejects bad input") {
    CHECK_THROWS_AS(eig_unitary(ComplexMatrix(2, 3)), ValidationError);
    const ComplexMatrix d{{1.0, 0.0}, {0.0, 2.0}};
    CHECK_THROWS_AS(eig_unitary(d), ValidationError);
}

TEST_CASE("eig_unitary reconstructs Haar unitaries and degenerate spectra") {
    SplitMix64 rng(2024);
    for (std::size_t dim : {1, 2, 3, 8, 33, 64}) {
        const auto u = haar_unitary(dim, rng);
        check_decomposition(u, eig_unitary(u));
    }

    // Conjugated diagonal with exact degeneracies and a +-theta pair, which
    // share an eigenvalue of (U + U^dagger)/2.
    const auto v = haar_unitary(6, rng);
    const std::vector<cplx> diag = {std::polar(1.0, 0.7), std::polar(1.0, 0.7),
                                    std::polar(1.0, -0.7), std::polar(1.0, 2.0),
                                    std::polar(1.0, 2.0), std::polar(1.0, 2.0)};
    const auto u = matmul(matmul(v, ComplexMatrix::diagonal(diag)), adjoint(v));
    const auto d = eig_unitary(u);
    check_decomposition(u, d);
    CHECK(d.angles[0] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(d.angles[1] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(d.angles[5] == doctest::Approx(2 * pi - 0.7).epsilon(1e-12));
}

TEST_CASE("bit_reversal_permutation") {
    CHECK(bit_reversal_permutation(1) == ComplexMatrix::identity(2));

    const ComplexMatrix swap{
        {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    CHECK(bit_reversal_permutation(2) == swap);

    const auto m3 = bit_reversal_permutation(3);
    const std::size_t image[8] = {0, 4, 2, 6, 1, 5, 3, 7};
    for (std::size_t b = 0; b < 8; ++b) {
        CHECK(m3(image[b], b) == cplx(1.0));
    }

    for (unsigned n = 1; n <= 6; ++n) {
        const auto m = bit_reversal_permutation(n);
        CHECK(matmul(m, m) == ComplexMatrix::identity(m.rows()));
        CHECK(transpose(m) == m);
    }
    CHECK_THROWS_AS(bit_reversal_permutation(0), ValidationError);
}

TEST_CASE("binary and JSON matrix formats round-trip") {
    SplitMix64 rng(3);
    const auto u = haar_unitary(4, rng);

    std::ostringstream out;
    write_matrix_binary(out, u);
    const std::string bytes = out.str();
    REQUIRE(bytes.size() == 4 + 4 + 16 * 16);
    CHECK(bytes.substr(0, 4) == "CEM1");
    CHECK(static_cast<unsigned char>(bytes[4]) == 4);
    CHECK(bytes[5] == 0);

    std::istringstream in(bytes);
    CHECK(read_matrix_binary(in) == u);
    CHECK(matrix_from_json(matrix_to_json(u, 2)) == u);

    std::istringstream bad("XXXX");
    CHECK_THROWS_AS(read_matrix_binary(bad), IoError);
    std::istringstream truncated(bytes.substr(0, 20));
    CHECK_THROWS_AS(read_matrix_binary(truncated), IoError);
}

TEST_CASE("binary format stores little-endian doubles row-major") {
    const ComplexMatrix m{{cplx(1.0, -2.0), 0.0}, {0.0, 0.5}};
    std::ostringstream out;
    write_matrix_binary(out, m);
    const std::string bytes = out.str();
    // 1.0 = 0x3FF0000000000000, low byte first.
    CHECK(static_cast<unsigned char>(bytes[8 + 7]) == 0x3F);
    CHECK(static_cast<unsigned char>(bytes[8 + 6]) == 0xF0);
    // -2.0 = 0xC000000000000000.
    CHECK(static_cast<unsigned char>(bytes[16 + 7]) == 0xC0);
}
