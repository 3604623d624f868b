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
 * @file spectra.hpp
 * Spectral statistics of unitary operators: unfolded nearest-neighbour
 * eigenangle spacings, eigenvector component amplitudes, Kramers pairing of
 * symplectic spectra, histograms and Kolmogorov-Smirnov distances.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cem/ensembles.hpp"
#include "cem/linalg.hpp"

namespace cem {

enum class SampleLabel { Spacings, Amplitudes };

std::string_view to_string(SampleLabel l) noexcept;
SampleLabel parse_sample_label(std::string_view s);

struct SampleMetadata {
    unsigned n_qubits = 0;
    unsigned iterations = 0;
    std::size_t realizations = 0;
    /// nullopt for samples drawn from the Haar oracle.
    std::optional<Architecture> architecture;

    friend bool operator==(const SampleMetadata &,
                           const SampleMetadata &) = default;
};

struct StatSample {
    SampleLabel label = SampleLabel::Spacings;
    Ensemble ensemble = Ensemble::CUE;
    std::vector<double> values;
    SampleMetadata metadata;

    friend bool operator==(const StatSample &, const StatSample &) = default;
};

/// Sample mean; throws ValidationError when the sample is empty.
double sample_mean(std::span<const double> values);

/// Throws NumericalError unless the unit-mean contract of `sample` holds.
void check_unit_mean(const StatSample &sample);

inline constexpr double kKramersTolerance = 1e-8;

struct KramersPairing {
    /// Pair centres in [0, 2pi), ascending.
    std::vector<double> distinct_angles;
    /// Indices into the parent decomposition, aligned with distinct_angles.
    /// .first is the member listed first by the eigensolver.
    std::vector<std::pair<std::size_t, std::size_t>> pair_indices;
    double max_pair_gap = 0.0;
};

/**
 * Unfolded spacings of a spectrum on the circle: K gaps including the
 * wraparound gap 2pi + a_0 - a_{K-1}, each multiplied by K / 2pi.
 */
std::vector<double> nn_spacings(std::span<const double> angles);

/**
 * Groups a doubly degenerate spectrum into adjacent pairs. Both the
 * (0,1)(2,3)... and the wraparound (1,2)...(K-1,0) pairings are tried and the
 * one with the smaller worst gap is kept; fails with NumericalError when that
 * gap exceeds `tol` and with ValidationError for an odd dimension.
 */
KramersPairing kramers_pair(const SpectralDecomposition &decomp,
                            double tol = kKramersTolerance);

/// y = N |v_k|^2 over every component of every eigenvector.
StatSample amplitudes_standard(const SpectralDecomposition &decomp);

/**
 * y = (N/2)(|v_k|^2 + |v_{k'}|^2) with k' = k ^ mask the time-reversal partner
 * of k, taking one eigenvector per Kramers pair. `z_mask` is the qubit mask
 * from z_qubit_mask().
 */
StatSample amplitudes_cse(const SpectralDecomposition &decomp,
                          const KramersPairing &pairing, std::size_t z_mask);

struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    std::size_t count = 0;
    double density = 0.0;
};

struct Histogram {
    std::vector<HistogramBin> bins;
    std::size_t out_of_range = 0;
};

/// Equal-width bins on [lo, hi]; hi falls in the last bin. Densities are
/// count / (total * width) with total counting out-of-range samples too.
Histogram histogram(std::span<const double> values, std::size_t bin_count,
                    double lo, double hi);

using Cdf = std::function<double(double)>;

/// One-sample KS distance D = max_i max(|i/K - F(x_i)|, |(i-1)/K - F(x_i)|).
double ks_statistic(std::span<const double> values, const Cdf &cdf);

/// Two-sample KS distance sup_x |F_a(x) - F_b(x)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

} // namespace cem
