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
#include "cem/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cem/errors.hpp"

namespace cem {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSpacingMeanTol = 1e-12;
constexpr double kAmplitudeMeanTol = 1e-10;
} // namespace

std::string_view to_string(SampleLabel l) noexcept {
    return l == SampleLabel::Spacings ? "spacings" : "amplitudes";
}

SampleLabel parse_sample_label(std::string_view s) {
    if (s == "spacings") {
        return SampleLabel::Spacings;
    }
    if (s == "amplitudes") {
        return SampleLabel::Amplitudes;
    }
    throw ValidationError("unknown sample label '" + std::string(s) + "'");
}

double sample_mean(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("sample_mean: empty sample");
    }
    // Compensated sum; the spacing mean contract is 1e-12.
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(values.size());
}

void check_unit_mean(const StatSample &sample) {
    const double tol = sample.label == SampleLabel::Spacings ? kSpacingMeanTol
                                                             : kAmplitudeMeanTol;
    const double mean = sample_mean(sample.values);
    if (std::abs(mean - 1.0) > tol) {
        throw NumericalError(std::string(to_string(sample.label)) +
                             " sample mean " + std::to_string(mean) +
                             " deviates from 1");
    }
}

std::vector<double> nn_spacings(std::span<const double> angles) {
    const std::size_t k = angles.size();
    if (k < 2) {
        throw ValidationError("nn_spacings: need at least 2 angles");
    }
    const double scale = static_cast<double>(k) / kTwoPi;
    std::vector<double> out(k);
    for (std::size_t i = 0; i + 1 < k; ++i) {
        out[i] = (angles[i + 1] - angles[i]) * scale;
    }
    out[k - 1] = (kTwoPi + angles[0] - angles[k - 1]) * scale;
    return out;
}

KramersPairing kramers_pair(const SpectralDecomposition &decomp, double tol) {
    const auto &angles = decomp.angles;
    const std::size_t k = angles.size();
    if (k == 0 || k % 2 != 0) {
        throw ValidationError("kramers_pair: dimension " + std::to_string(k) +
                              " is not even");
    }

    // Gap between sorted neighbours i and i+1 (mod k) on the circle.
    auto gap = [&](std::size_t i) {
        return i + 1 < k ? angles[i + 1] - angles[i]
                         : kTwoPi + angles[0] - angles[k - 1];
    };
    auto worst_gap = [&](std::size_t offset) {
        double worst = 0.0;
        for (std::size_t i = offset; i < k + offset; i += 2) {
            worst = std::max(worst, gap(i % k));
        }
        return worst;
    };

    const double direct = worst_gap(0);
    const double shifted = worst_gap(1);
    const std::size_t offset = shifted < direct ? 1 : 0;
    const double worst = std::min(direct, shifted);
    if (!(worst <= tol)) {
        throw NumericalError("kramers_pair: spectrum is not doubly degenerate "
                             "(smallest worst pair gap " +
                             std::to_string(worst) + " > tolerance " +
                             std::to_string(tol) + ")");
    }

    std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> pairs;
    pairs.reserve(k / 2);
    for (std::size_t i = offset; i < k + offset; i += 2) {
        const std::size_t a = i % k;
        const std::size_t b = (i + 1) % k;
        double centre = angles[a] + 0.5 * gap(a);
        if (centre >= kTwoPi) {
            centre -= kTwoPi;
        }
        pairs.push_back({centre, {std::min(a, b), std::max(a, b)}});
    }
    std::sort(pairs.begin(), pairs.end());

    KramersPairing out;
    out.max_pair_gap = worst;
    out.distinct_angles.reserve(pairs.size());
    out.pair_indices.reserve(pairs.size());
    for (const auto &[centre, idx] : pairs) {
        out.distinct_angles.push_back(centre);
        out.pair_indices.push_back(idx);
    }
    return out;
}

StatSample amplitudes_standard(const SpectralDecomposition &decomp) {
    const auto &v = decomp.vectors;
    const auto n = static_cast<double>(v.rows());
    StatSample out;
    out.label = SampleLabel::Amplitudes;
    out.values.reserve(v.rows() * v.cols());
    for (std::size_t col = 0; col < v.cols(); ++col) {
        for (std::size_t row = 0; row < v.rows(); ++row) {
            out.values.push_back(n * std::norm(v(row, col)));
        }
    }
    return out;
}

StatSample amplitudes_cse(const SpectralDecomposition &decomp,
                          const KramersPairing &pairing, std::size_t z_mask) {
    const auto &v = decomp.vectors;
    const std::size_t dim = v.rows();
    if (z_mask == 0 || z_mask >= dim) {
        throw ValidationError("amplitudes_cse: z mask does not fit dimension");
    }
    if (pairing.pair_indices.size() * 2 != v.cols()) {
        throw ValidationError(
            "amplitudes_cse: pairing does not match decomposition");
    }
    const double half = static_cast<double>(dim) / 2.0;
    StatSample out;
    out.label = SampleLabel::Amplitudes;
    out.ensemble = Ensemble::CSE;
    out.values.reserve(pairing.pair_indices.size() * dim / 2);
    for (const auto &[first, second] : pairing.pair_indices) {
        for (std::size_t row = 0; row < dim; ++row) {
            const std::size_t partner = time_reversal_partner(row, z_mask);
            if (row < partner) {
                out.values.push_back(
                    half * (std::norm(v(row, first)) + std::norm(v(partner, first))));
            }
        }
    }
    return out;
}

Histogram histogram(std::span<const double> values, std::size_t bin_count,
                    double lo, double hi) {
    if (bin_count < 1) {
        throw ValidationError("histogram: bin_count must be >= 1");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
        throw ValidationError("histogram: invalid range");
    }
    const double width = (hi - lo) / static_cast<double>(bin_count);
    Histogram out;
    out.bins.resize(bin_count);
    for (std::size_t b = 0; b < bin_count; ++b) {
        out.bins[b].left = lo + width * static_cast<double>(b);
        out.bins[b].right =
            b + 1 == bin_count ? hi : lo + width * static_cast<double>(b + 1);
    }
    for (double x : values) {
        if (!(x >= lo && x <= hi)) {
            ++out.out_of_range;
            continue;
        }
        auto b = static_cast<std::size_t>((x - lo) / width);
        b = std::min(b, bin_count - 1);
        ++out.bins[b].count;
    }
    const auto total = static_cast<double>(values.size());
    if (total > 0) {
        for (auto &bin : out.bins) {
            bin.density = static_cast<double>(bin.count) /
                          (total * (bin.right - bin.left));
        }
    }
    return out;
}

double ks_statistic(std::span<const double> values, const Cdf &cdf) {
    if (values.empty()) {
        throw ValidationError("ks_statistic: empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto k = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double above = static_cast<double>(i + 1) / k - f;
        const double below = f - static_cast<double>(i) / k;
        d = std::max({d, std::abs(above), std::abs(below)});
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw ValidationError("ks_two_sample: empty sample");
    }
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const auto nx = static_cast<double>(x.size());
    const auto ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double t = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= t) {
            ++i;
        }
        while (j < y.size() && y[j] <= t) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / nx -
                                 static_cast<double>(j) / ny));
    }
    return d;
}

} // namespace cem
