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
#include "cem/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "cem/errors.hpp"
#include "cem/io.hpp"

namespace cem {

namespace {

struct RealizationStats {
    std::vector<double> spacings;
    std::vector<double> amplitudes;
};

// Runs task(r) for r = 1..count on up to `workers` threads and returns the
// results in index order. The first failure by realization index is
// rethrown.
std::vector<RealizationStats>
parallel_realizations(std::size_t count, unsigned workers,
                      const std::function<RealizationStats(std::size_t)> &task) {
    std::vector<RealizationStats> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = task(i + 1);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads =
        std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const auto &err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
    return results;
}

RealizationStats stats_of(const ComplexMatrix &u, Ensemble ensemble,
                          std::size_t z_mask, std::size_t realization) {
    const SpectralDecomposition decomp = eig_unitary(u);
    RealizationStats out;
    if (ensemble == Ensemble::CSE) {
        KramersPairing pairing;
        try {
            pairing = kramers_pair(decomp);
        } catch (const NumericalError &e) {
            throw NumericalError("realization " + std::to_string(realization) +
                                 ": " + e.what());
        }
        out.spacings = nn_spacings(pairing.distinct_angles);
        out.amplitudes = amplitudes_cse(decomp, pairing, z_mask).values;
    } else {
        out.spacings = nn_spacings(decomp.angles);
        out.amplitudes = amplitudes_standard(decomp).values;
    }
    return out;
}

ExperimentResult pool(std::vector<RealizationStats> parts, Ensemble ensemble,
                      const SampleMetadata &meta) {
    ExperimentResult out;
    out.spacings.label = SampleLabel::Spacings;
    out.amplitudes.label = SampleLabel::Amplitudes;
    out.spacings.ensemble = out.amplitudes.ensemble = ensemble;
    out.spacings.metadata = out.amplitudes.metadata = meta;
    for (auto &p : parts) {
        out.spacings.values.insert(out.spacings.values.end(),
                                   p.spacings.begin(), p.spacings.end());
        out.amplitudes.values.insert(out.amplitudes.values.end(),
                                     p.amplitudes.begin(), p.amplitudes.end());
    }
    check_unit_mean(out.spacings);
    check_unit_mean(out.amplitudes);
    return out;
}

void check_realizations(std::size_t r) {
    if (r < 1) {
        throw ValidationError("realizations must be >= 1");
    }
}

std::string format_double(double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

} // namespace

ZMode default_z_mode(Architecture arch) noexcept {
    switch (arch) {
    case Architecture::Circuit:
        return ZMode::Standard;
    case Architecture::QcaOneSpecies:
        return ZMode::QcaAllQubits;
    case Architecture::QcaTwoSpecies:
        return ZMode::QcaSpecies;
    }
    return ZMode::Standard;
}

ZMode effective_z_mode(const ExperimentConfig &config) noexcept {
    return config.z_mode.value_or(default_z_mode(config.architecture));
}

void validate_config(const ExperimentConfig &config) {
    check_realizations(config.realizations);
    if (config.n_qubits < 1 || config.n_qubits > kMaxQubits) {
        throw ValidationError("n must be in [1, " + std::to_string(kMaxQubits) +
                              "]");
    }
    if (config.coupling_override) {
        const unsigned bond = config.coupling_override->bond;
        if (bond < 1 || bond >= config.n_qubits) {
            throw ValidationError("symmetry-breaking bond " +
                                  std::to_string(bond) + " does not exist for n = " +
                                  std::to_string(config.n_qubits));
        }
    }
    if (config.ensemble == Ensemble::CSE) {
        check_z_mode(config.architecture, config.n_qubits,
                     effective_z_mode(config));
    }
}

unsigned default_worker_count() {
    if (const char *env = std::getenv("CEM_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception &) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

ExperimentResult run_experiment(const ExperimentConfig &config,
                                unsigned workers) {
    validate_config(config);
    if (config.ensemble == Ensemble::CSE && config.n_qubits < 2) {
        throw ValidationError("CSE statistics need n >= 2 (one Kramers pair "
                              "has no spacing)");
    }
    const ZMode z_mode = effective_z_mode(config);
    const std::size_t mask = config.ensemble == Ensemble::CSE
                                 ? z_qubit_mask(config.n_qubits, z_mode)
                                 : 0;
    auto parts = parallel_realizations(
        config.realizations, workers, [&](std::size_t r) {
            const CircuitSpec spec =
                make_spec(config.architecture, config.n_qubits,
                          config.iterations, mix_seed(config.seed, r),
                          config.coupling_override);
            return stats_of(build_operator(spec, config.ensemble, z_mode),
                            config.ensemble, mask, r);
        });
    SampleMetadata meta{config.n_qubits, config.iterations, config.realizations,
                        config.architecture};
    return pool(std::move(parts), config.ensemble, meta);
}

ExperimentResult run_oracle_experiment(Ensemble ensemble, unsigned n_qubits,
                                       std::size_t realizations,
                                       std::uint64_t seed, unsigned workers) {
    check_realizations(realizations);
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ValidationError("oracle: n out of range");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    auto parts =
        parallel_realizations(realizations, workers, [&](std::size_t r) {
            SplitMix64 rng(mix_seed(seed, r));
            switch (ensemble) {
            case Ensemble::CUE:
                return stats_of(haar_unitary(dim, rng), ensemble, 0, r);
            case Ensemble::COE:
                return stats_of(haar_coe(dim, rng), ensemble, 0, r);
            case Ensemble::CSE:
                return stats_of(haar_cse(n_qubits, rng), ensemble,
                                z_qubit_mask(n_qubits, ZMode::Standard), r);
            }
            throw ValidationError("oracle: unknown ensemble");
        });
    SampleMetadata meta{n_qubits, 0, realizations, std::nullopt};
    return pool(std::move(parts), ensemble, meta);
}

MatrixFormat parse_matrix_format(std::string_view s) {
    if (s == "bin") {
        return MatrixFormat::Binary;
    }
    if (s == "json") {
        return MatrixFormat::Json;
    }
    throw ValidationError("matrix format must be bin or json, got '" +
                          std::string(s) + "'");
}

GenerateReport cmd_generate(const ExperimentConfig &config,
                            const std::filesystem::path &out,
                            MatrixFormat format) {
    validate_config(config);
    if (config.realizations != 1) {
        throw ValidationError("generate writes exactly one realization");
    }
    const ZMode z_mode = effective_z_mode(config);
    const CircuitSpec spec =
        make_spec(config.architecture, config.n_qubits, config.iterations,
                  config.seed, config.coupling_override);
    const ComplexMatrix u = build_operator(spec, config.ensemble, z_mode);

    GenerateReport report;
    report.variable_count = independent_variable_count(spec);
    report.unitarity_defect = unitarity_defect(u);
    if (config.ensemble == Ensemble::COE) {
        report.symmetry_defect = max_abs_diff(u, transpose(u));
    }
    if (config.ensemble == Ensemble::CSE) {
        const ComplexMatrix z = z_operator(config.n_qubits, z_mode);
        ComplexMatrix dual = matmul(matmul(z, transpose(u)), z);
        dual *= -1.0;
        report.self_duality_defect = max_abs_diff(u, dual);
    }

    if (format == MatrixFormat::Binary) {
        std::ostringstream buf;
        write_matrix_binary(buf, u);
        write_file(out, buf.str());
    } else {
        write_file(out, matrix_to_json(u, config.n_qubits));
    }
    return report;
}

SampleOutputs cmd_sample(const ExperimentConfig &config,
                         const std::filesystem::path &prefix, unsigned workers,
                         std::size_t bins, double hist_max) {
    const ExperimentResult result = run_experiment(config, workers);
    const std::string base = prefix.string();
    SampleOutputs paths{base + ".spacings.json", base + ".amplitudes.json",
                        base + ".spacings.csv", base + ".amplitudes.csv"};

    write_file(paths.spacings_json, sample_to_json(result.spacings));
    write_file(paths.amplitudes_json, sample_to_json(result.amplitudes));
    for (const auto &[sample, path] :
         {std::pair{&result.spacings, &paths.spacings_csv},
          std::pair{&result.amplitudes, &paths.amplitudes_csv}}) {
        std::ostringstream csv;
        write_histogram_csv(csv, histogram(sample->values, bins, 0.0, hist_max));
        write_file(*path, csv.str());
    }
    return paths;
}

GofTarget parse_gof_target(std::string_view s) {
    if (s == "surmise") {
        return GofTarget::Surmise;
    }
    if (s == "amplitude-law") {
        return GofTarget::AmplitudeLaw;
    }
    if (s == "haar-oracle") {
        return GofTarget::HaarOracle;
    }
    throw ValidationError("gof target must be surmise, amplitude-law or "
                          "haar-oracle, got '" +
                          std::string(s) + "'");
}

GofReport cmd_gof(const StatSample &sample, GofTarget target,
                  std::optional<Ensemble> expected_ensemble,
                  std::uint64_t oracle_seed, unsigned workers) {
    if (sample.values.empty()) {
        throw ValidationError("gof: sample is empty");
    }
    if (expected_ensemble && *expected_ensemble != sample.ensemble) {
        throw ValidationError("gof: sample is " +
                              std::string(to_string(sample.ensemble)) +
                              " but target ensemble is " +
                              std::string(to_string(*expected_ensemble)));
    }
    GofReport report;
    report.sample_size = sample.values.size();
    const std::string ens(to_string(sample.ensemble));
    switch (target) {
    case GofTarget::Surmise:
    case GofTarget::AmplitudeLaw: {
        const bool surmise = target == GofTarget::Surmise;
        const SampleLabel needed =
            surmise ? SampleLabel::Spacings : SampleLabel::Amplitudes;
        if (sample.label != needed) {
            throw ValidationError("gof: target needs a " +
                                  std::string(to_string(needed)) +
                                  " sample, got " +
                                  std::string(to_string(sample.label)));
        }
        const DistributionCurve curve =
            surmise ? spacing_surmise(sample.ensemble)
                    : amplitude_law(sample.ensemble);
        report.description = ens + (surmise ? " spacing surmise"
                                            : " amplitude law");
        report.ks = ks_statistic(sample.values,
                                 [&](double x) { return curve.cdf(x); });
        break;
    }
    case GofTarget::HaarOracle: {
        const auto &meta = sample.metadata;
        if (meta.n_qubits < 1 || meta.realizations < 1) {
            throw ValidationError("gof: sample metadata lacks n_qubits or "
                                  "realizations");
        }
        const ExperimentResult oracle = run_oracle_experiment(
            sample.ensemble, meta.n_qubits, meta.realizations, oracle_seed,
            workers);
        const StatSample &other = sample.label == SampleLabel::Spacings
                                      ? oracle.spacings
                                      : oracle.amplitudes;
        report.description = ens + " Haar oracle (" +
                             std::to_string(other.values.size()) + " " +
                             std::string(to_string(sample.label)) + ")";
        report.ks = ks_two_sample(sample.values, other.values);
        break;
    }
    }
    return report;
}

void cmd_reference(std::ostream &out, Ensemble ensemble, CurveKind kind,
                   double lo, double hi, std::size_t points) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(hi > lo) ||
        points < 2) {
        throw ValidationError("reference grid needs 0 <= from < to and at "
                              "least 2 points");
    }
    const DistributionCurve curve = reference_curve(kind, ensemble);
    out << "x,pdf,cdf\n";
    for (std::size_t i = 0; i < points; ++i) {
        const double x =
            i + 1 == points
                ? hi
                : lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(points - 1);
        out << format_double(x) << ',' << format_double(curve.pdf(x)) << ','
            << format_double(curve.cdf(x)) << '\n';
    }
}

} // namespace cem
