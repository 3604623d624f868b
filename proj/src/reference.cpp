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
#include "cem/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <Eigen/QR>

#include "cem/errors.hpp"
#include "eigen_interop.hpp"

namespace cem {

namespace {

using std::numbers::pi;

// Every curve has a Gaussian or exponential tail; at x = 81 the heaviest one
// (exp(-x/2)/sqrt(2 pi x)) has tail mass ~1e-18.
constexpr double kTMax = 9.0;
constexpr double kCellWidth = 0.02;
constexpr double kQuadTol = 1e-12;

using Quadrature = boost::math::quadrature::gauss_kronrod<double, 21>;
// Partial cells are shorter than kCellWidth and the t-integrands are entire,
// so one fixed 15-point pass is exact to rounding.
using CellRule = boost::math::quadrature::gauss<double, 15>;

} // namespace

struct DistributionCurve::Table {
    std::function<double(double)> integrand; // pdf(t^2) * 2t
    std::vector<double> cumulative;          // cumulative[k] = cdf(t_k^2)

    [[nodiscard]] double integrate(double a, double b) const {
        return Quadrature::integrate(integrand, a, b, 15, kQuadTol);
    }

    [[nodiscard]] double cdf_t(double t) const {
        if (t <= 0.0) {
            return 0.0;
        }
        if (t >= kTMax) {
            return std::min(1.0, cumulative.back());
        }
        const auto k = std::min(static_cast<std::size_t>(t / kCellWidth),
                                cumulative.size() - 2);
        const double left = static_cast<double>(k) * kCellWidth;
        if (t == left) {
            return std::min(1.0, cumulative[k]);
        }
        return std::min(1.0,
                        cumulative[k] + CellRule::integrate(integrand, left, t));
    }
};

std::string_view to_string(CurveKind k) noexcept {
    return k == CurveKind::SpacingSurmise ? "spacing" : "amplitude";
}

CurveKind parse_curve_kind(std::string_view s) {
    if (s == "spacing" || s == "surmise") {
        return CurveKind::SpacingSurmise;
    }
    if (s == "amplitude" || s == "amplitude-law") {
        return CurveKind::AmplitudeLaw;
    }
    throw ValidationError("unknown curve kind '" + std::string(s) + "'");
}

int amplitude_dof(Ensemble e) noexcept {
    switch (e) {
    case Ensemble::COE:
        return 1;
    case Ensemble::CUE:
        return 2;
    case Ensemble::CSE:
        return 4;
    }
    return 2;
}

DistributionCurve::DistributionCurve(CurveKind kind, Ensemble ensemble,
                                     std::function<double(double)> pdf)
    : kind_(kind), ensemble_(ensemble), pdf_(std::move(pdf)) {
    auto table = std::make_shared<Table>();
    table->integrand = [f = pdf_](double t) {
        return t <= 0.0 ? 0.0 : f(t * t) * 2.0 * t;
    };
    const auto cells = static_cast<std::size_t>(std::lround(kTMax / kCellWidth));
    table->cumulative.resize(cells + 1);
    table->cumulative[0] = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
        const double a = static_cast<double>(k) * kCellWidth;
        table->cumulative[k + 1] =
            table->cumulative[k] + table->integrate(a, a + kCellWidth);
    }
    table_ = std::move(table);
}

double DistributionCurve::pdf(double x) const {
    return x < 0.0 ? 0.0 : pdf_(x);
}

double DistributionCurve::cdf(double x) const {
    return x <= 0.0 ? 0.0 : table_->cdf_t(std::sqrt(x));
}

double DistributionCurve::support_end() const noexcept { return kTMax * kTMax; }

double DistributionCurve::quantile(double p) const {
    if (!(p >= 0.0 && p < 1.0)) {
        throw ValidationError("quantile: p must be in [0, 1)");
    }
    if (p == 0.0) {
        return 0.0;
    }
    const auto &cum = table_->cumulative;
    if (p >= cum.back()) {
        return support_end();
    }
    const auto it = std::upper_bound(cum.begin(), cum.end(), p);
    const auto k = static_cast<std::size_t>(it - cum.begin()) - 1;
    const double lo = static_cast<double>(k) * kCellWidth;
    const double hi = lo + kCellWidth;

    std::uintmax_t max_iter = 100;
    const auto [a, b] = boost::math::tools::toms748_solve(
        [&](double t) { return table_->cdf_t(t) - p; }, lo, hi,
        cum[k] - p, cum[k + 1] - p, boost::math::tools::eps_tolerance<double>(50),
        max_iter);
    const double t = 0.5 * (a + b);
    return t * t;
}

DistributionCurve spacing_surmise(Ensemble ensemble) {
    switch (ensemble) {
    case Ensemble::CUE:
        return {CurveKind::SpacingSurmise, ensemble, [](double s) {
                    return 32.0 * s * s / (pi * pi) * std::exp(-4.0 * s * s / pi);
                }};
    case Ensemble::COE:
        return {CurveKind::SpacingSurmise, ensemble, [](double s) {
                    return 0.5 * pi * s * std::exp(-0.25 * pi * s * s);
                }};
    case Ensemble::CSE:
        return {CurveKind::SpacingSurmise, ensemble, [](double s) {
                    const double a = 64.0 / (9.0 * pi);
                    const double s2 = s * s;
                    return a * a * a * s2 * s2 * std::exp(-a * s2);
                }};
    }
    throw ValidationError("spacing_surmise: unknown ensemble");
}

DistributionCurve amplitude_law(Ensemble ensemble) {
    const double nu = amplitude_dof(ensemble);
    const double half = 0.5 * nu;
    const double norm = std::pow(half, half) / std::tgamma(half);
    return {CurveKind::AmplitudeLaw, ensemble, [=](double y) {
                if (y == 0.0) {
                    // y^{nu/2 - 1}: diverges for nu = 1, equals 1 for nu = 2.
                    return half < 1.0 ? std::numeric_limits<double>::infinity()
                                      : (half == 1.0 ? norm : 0.0);
                }
                return norm * std::pow(y, half - 1.0) * std::exp(-half * y);
            }};
}

DistributionCurve reference_curve(CurveKind kind, Ensemble ensemble) {
    return kind == CurveKind::SpacingSurmise ? spacing_surmise(ensemble)
                                             : amplitude_law(ensemble);
}

double coe_spacing_cdf(double s) noexcept {
    return s <= 0.0 ? 0.0 : -std::expm1(-0.25 * pi * s * s);
}

std::vector<double> sample_by_inversion(const DistributionCurve &curve,
                                        std::size_t count, SplitMix64 &rng) {
    std::vector<double> out(count);
    for (auto &x : out) {
        x = curve.quantile(rng.uniform());
    }
    return out;
}

ComplexMatrix haar_unitary(std::size_t dim, SplitMix64 &rng) {
    if (dim < 1) {
        throw ValidationError("haar_unitary: dim must be >= 1");
    }
    const auto n = static_cast<Eigen::Index>(dim);
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
    Eigen::MatrixXcd ginibre(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            ginibre(r, c) = cplx(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
    Eigen::MatrixXcd q = qr.householderQ();
    const auto &packed = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const cplx d = packed(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0.0 ? d / mag : cplx(1.0);
    }
    return detail::from_eigen(q);
}

ComplexMatrix haar_coe(std::size_t dim, SplitMix64 &rng) {
    const ComplexMatrix u = haar_unitary(dim, rng);
    return matmul(transpose(u), u);
}

ComplexMatrix haar_cse(unsigned n_qubits, SplitMix64 &rng) {
    const ComplexMatrix z = z_operator(n_qubits, ZMode::Standard);
    const ComplexMatrix u = haar_unitary(std::size_t{1} << n_qubits, rng);
    ComplexMatrix dual = matmul(matmul(z, transpose(u)), z);
    dual *= -1.0;
    return matmul(dual, u);
}

} // namespace cem
