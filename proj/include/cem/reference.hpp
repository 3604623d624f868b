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
 * @file reference.hpp
 * Target distributions for the circular ensembles and a Haar-measure
 * sampling oracle.
 *
 * Spacing surmises (unit mean):
 *   CUE  (32 s^2 / pi^2) exp(-4 s^2 / pi)
 *   COE  (pi s / 2) exp(-pi s^2 / 4)
 *   CSE  (64 / 9pi)^3 s^4 exp(-64 s^2 / 9pi)
 *
 * Amplitude laws, chi-squared with nu = 2, 1, 4 degrees of freedom and unit
 * mean:
 *   P_nu(y) = (nu/2)^{nu/2} / Gamma(nu/2) y^{nu/2 - 1} exp(-nu y / 2)
 * i.e. exp(-y), exp(-y/2)/sqrt(2 pi y) and 4 y exp(-2y).
 */

#include <cstddef>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "cem/ensembles.hpp"
#include "cem/linalg.hpp"
#include "cem/rng.hpp"

namespace cem {

enum class CurveKind { SpacingSurmise, AmplitudeLaw };

std::string_view to_string(CurveKind k) noexcept;
CurveKind parse_curve_kind(std::string_view s);

/// Degrees of freedom of the amplitude law: 1 (COE), 2 (CUE), 4 (CSE).
int amplitude_dof(Ensemble e) noexcept;

/**
 * A probability density on [0, inf) with its CDF.
 *
 * The CDF is tabulated once by adaptive Gauss-Kronrod quadrature in the
 * variable t = sqrt(x), which removes the x^{-1/2} singularity of the COE
 * amplitude law; evaluations add one quadrature over the partial grid cell.
 * Copies share the table.
 */
class DistributionCurve {
  public:
    DistributionCurve(CurveKind kind, Ensemble ensemble,
                      std::function<double(double)> pdf);

    [[nodiscard]] CurveKind kind() const noexcept { return kind_; }
    [[nodiscard]] Ensemble ensemble() const noexcept { return ensemble_; }

    [[nodiscard]] double pdf(double x) const;
    [[nodiscard]] double cdf(double x) const;
    /// Inverse CDF for p in [0, 1).
    [[nodiscard]] double quantile(double p) const;

    /// Support point beyond which the tabulated tail mass is below 1e-16.
    [[nodiscard]] double support_end() const noexcept;

  private:
    struct Table;

    CurveKind kind_;
    Ensemble ensemble_;
    std::function<double(double)> pdf_;
    std::shared_ptr<const Table> table_;
};

DistributionCurve spacing_surmise(Ensemble ensemble);
DistributionCurve amplitude_law(Ensemble ensemble);
DistributionCurve reference_curve(CurveKind kind, Ensemble ensemble);

/// Closed-form COE spacing CDF 1 - exp(-pi s^2 / 4).
double coe_spacing_cdf(double s) noexcept;

/// Draws `count` points from the curve by inverting its CDF at uniforms.
std::vector<double> sample_by_inversion(const DistributionCurve &curve,
                                        std::size_t count, SplitMix64 &rng);

/**
 * Haar-distributed unitary: Householder QR of a complex Ginibre matrix, with
 * column j of Q multiplied by R_jj / |R_jj| so that the implied R has a
 * positive diagonal.
 */
ComplexMatrix haar_unitary(std::size_t dim, SplitMix64 &rng);

/// U^T U for a Haar U.
ComplexMatrix haar_coe(std::size_t dim, SplitMix64 &rng);

/// -Z U^T Z U for a Haar U on n qubits, Z = I (x) ... (x) z.
ComplexMatrix haar_cse(unsigned n_qubits, SplitMix64 &rng);

} // namespace cem
