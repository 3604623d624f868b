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
 * @file experiment.hpp
 * Multi-realization experiments and the commands behind the `cem` CLI.
 *
 * Realization r (1-based) of an experiment seeded with s is built from the
 * substream mix_seed(s, r). Realizations may run on several workers; results
 * are always merged in realization order, so outputs do not depend on the
 * worker count.
 */

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cem/ensembles.hpp"
#include "cem/reference.hpp"
#include "cem/spectra.hpp"

namespace cem {

struct ExperimentConfig {
    Ensemble ensemble = Ensemble::CUE;
    Architecture architecture = Architecture::Circuit;
    unsigned n_qubits = 8;
    unsigned iterations = 60;
    std::size_t realizations = 100;
    std::uint64_t seed = 1;
    /// Defaults per architecture: Standard, QcaAllQubits, QcaSpecies.
    std::optional<ZMode> z_mode;
    std::optional<CouplingOverride> coupling_override;
};

ZMode default_z_mode(Architecture arch) noexcept;
ZMode effective_z_mode(const ExperimentConfig &config) noexcept;

/// Throws ValidationError for an unusable combination.
void validate_config(const ExperimentConfig &config);

struct ExperimentResult {
    StatSample spacings;
    StatSample amplitudes;
};

/// Worker count from CEM_WORKERS, else hardware concurrency (at least 1).
unsigned default_worker_count();

/// Builds, decomposes and pools every realization. Throws NumericalError
/// naming the realization when Kramers pairing fails.
ExperimentResult run_experiment(const ExperimentConfig &config,
                                unsigned workers = 1);

/// Same statistics for Haar-oracle draws at dimension 2^n_qubits. CSE uses
/// the standard Z.
ExperimentResult run_oracle_experiment(Ensemble ensemble, unsigned n_qubits,
                                       std::size_t realizations,
                                       std::uint64_t seed, unsigned workers = 1);

enum class MatrixFormat { Binary, Json };
MatrixFormat parse_matrix_format(std::string_view s);

struct GenerateReport {
    std::size_t variable_count = 0;
    double unitarity_defect = 0.0;
    /// ||U - U^T||_max for COE.
    std::optional<double> symmetry_defect;
    /// ||U + Z U^T Z||_max for CSE.
    std::optional<double> self_duality_defect;
};

/// Writes one operator; config.realizations must be 1.
GenerateReport cmd_generate(const ExperimentConfig &config,
                            const std::filesystem::path &out,
                            MatrixFormat format);

struct SampleOutputs {
    std::filesystem::path spacings_json;
    std::filesystem::path amplitudes_json;
    std::filesystem::path spacings_csv;
    std::filesystem::path amplitudes_csv;
};

inline constexpr std::size_t kDefaultBins = 40;
inline constexpr double kDefaultHistMax = 4.0;

/// Runs the experiment and writes <prefix>.{spacings,amplitudes}.{json,csv}.
SampleOutputs cmd_sample(const ExperimentConfig &config,
                         const std::filesystem::path &prefix,
                         unsigned workers = 1,
                         std::size_t bins = kDefaultBins,
                         double hist_max = kDefaultHistMax);

enum class GofTarget { Surmise, AmplitudeLaw, HaarOracle };
GofTarget parse_gof_target(std::string_view s);

struct GofReport {
    std::string description;
    std::size_t sample_size = 0;
    double ks = 0.0;
};

/// KS distance of a sample against its reference curve or a Haar-oracle
/// sample of matched size. `expected_ensemble`, when given, must match the
/// sample.
GofReport cmd_gof(const StatSample &sample, GofTarget target,
                  std::optional<Ensemble> expected_ensemble,
                  std::uint64_t oracle_seed, unsigned workers = 1);

/// Writes "x,pdf,cdf" rows on an even grid of `points` values over [lo, hi].
void cmd_reference(std::ostream &out, Ensemble ensemble, CurveKind kind,
                   double lo, double hi, std::size_t points);

/// Full command-line front end. Exit codes: 0 ok, 1 validation, 2 numerical,
/// 3 I/O.
int run_cli(int argc, const char *const *argv);

} // namespace cem
