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
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cem/errors.hpp"
#include "cem/experiment.hpp"
#include "cem/io.hpp"

namespace cem {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

// Raw flag values shared by generate and sample.
struct ConfigFlags {
    std::string ensemble = "CUE";
    std::string arch = "circuit";
    unsigned n_qubits = 8;
    unsigned iterations = 60;
    std::size_t realizations = 100;
    std::uint64_t seed = 1;
    std::string z_mode;
    bool break_symmetry = false;
    unsigned break_bond = 1;

    void attach(CLI::App &cmd, bool with_realizations) {
        cmd.add_option("--ensemble", ensemble, "CUE, COE or CSE")
            ->capture_default_str();
        cmd.add_option("--arch", arch, "circuit, qca1 or qca2")
            ->capture_default_str();
        cmd.add_option("-n", n_qubits, "qubit count")->capture_default_str();
        cmd.add_option("-m", iterations, "iterations")->capture_default_str();
        if (with_realizations) {
            cmd.add_option("-R", realizations, "realizations")
                ->capture_default_str();
        }
        cmd.add_option("--seed", seed, "64-bit seed")->capture_default_str();
        cmd.add_option("--z-mode", z_mode,
                       "standard, all or species (default follows --arch)");
        cmd.add_flag("--break-symmetry", break_symmetry,
                     "set one coupling to pi/5");
        cmd.add_option("--break-bond", break_bond,
                       "bond (1-based) used by --break-symmetry")
            ->capture_default_str();
    }

    [[nodiscard]] ExperimentConfig to_config() const {
        ExperimentConfig c;
        c.ensemble = parse_ensemble(ensemble);
        c.architecture = parse_architecture(arch);
        c.n_qubits = n_qubits;
        c.iterations = iterations;
        c.realizations = realizations;
        c.seed = seed;
        if (!z_mode.empty()) {
            c.z_mode = parse_z_mode(z_mode);
        }
        if (break_symmetry) {
            c.coupling_override = CouplingOverride{break_bond, kBrokenCoupling};
        }
        return c;
    }
};

void print_generate(std::ostream &out, const GenerateReport &r) {
    out.precision(6);
    out << "variables " << r.variable_count << '\n';
    out << "unitarity_defect " << std::scientific << r.unitarity_defect << '\n';
    if (r.symmetry_defect) {
        out << "symmetry_defect " << *r.symmetry_defect << '\n';
    }
    if (r.self_duality_defect) {
        out << "self_duality_defect " << *r.self_duality_defect << '\n';
    }
    out << std::defaultfloat;
}

} // namespace

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"Pseudo-random circular-ensemble operators and their "
                 "spectral statistics"};
    app.require_subcommand(1);

    unsigned workers = default_worker_count();
    app.add_option("--workers", workers,
                   "worker threads (default: CEM_WORKERS or hardware)");

    ConfigFlags gen_flags;
    std::string gen_out = "operator.bin";
    std::string gen_format = "bin";
    auto *generate = app.add_subcommand("generate", "write one operator");
    gen_flags.attach(*generate, false);
    generate->add_option("--out", gen_out, "output file")->capture_default_str();
    generate->add_option("--format", gen_format, "bin or json")
        ->capture_default_str();

    ConfigFlags sample_flags;
    std::string sample_out = "sample";
    std::size_t bins = kDefaultBins;
    double hist_max = kDefaultHistMax;
    auto *sample = app.add_subcommand(
        "sample", "pool spacing and amplitude statistics over realizations");
    sample_flags.attach(*sample, true);
    sample->add_option("--out", sample_out, "output path prefix")
        ->capture_default_str();
    sample->add_option("--bins", bins, "histogram bins")->capture_default_str();
    sample->add_option("--hist-max", hist_max, "histogram upper edge")
        ->capture_default_str();

    std::string gof_sample;
    std::string gof_target = "surmise";
    std::string gof_ensemble;
    std::uint64_t gof_seed = 2;
    std::string gof_out;
    auto *gof = app.add_subcommand("gof", "Kolmogorov-Smirnov goodness of fit");
    gof->add_option("--sample", gof_sample, "StatSample JSON file")->required();
    gof->add_option("--target", gof_target,
                    "surmise, amplitude-law or haar-oracle")
        ->capture_default_str();
    gof->add_option("--ensemble", gof_ensemble,
                    "expected ensemble (must match the sample)");
    gof->add_option("--seed", gof_seed, "seed of the Haar-oracle draw")
        ->capture_default_str();
    gof->add_option("--out", gof_out, "also write the report here");

    std::string ref_ensemble = "CUE";
    std::string ref_kind = "spacing";
    double ref_from = 0.0;
    double ref_to = 4.0;
    std::size_t ref_points = 81;
    std::string ref_out;
    std::string ref_format = "csv";
    auto *reference = app.add_subcommand("reference", "reference curve table");
    reference->add_option("--ensemble", ref_ensemble, "CUE, COE or CSE")
        ->capture_default_str();
    reference->add_option("--kind", ref_kind, "spacing or amplitude")
        ->capture_default_str();
    reference->add_option("--from", ref_from, "first grid point")
        ->capture_default_str();
    reference->add_option("--to", ref_to, "last grid point")
        ->capture_default_str();
    reference->add_option("--points", ref_points, "grid size")
        ->capture_default_str();
    reference->add_option("--format", ref_format, "csv")->capture_default_str();
    reference->add_option("--out", ref_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        workers = std::max(1U, workers);
        if (generate->parsed()) {
            ExperimentConfig config = gen_flags.to_config();
            config.realizations = 1;
            const auto report = cmd_generate(config, gen_out,
                                             parse_matrix_format(gen_format));
            print_generate(std::cout, report);
        } else if (sample->parsed()) {
            const auto paths = cmd_sample(sample_flags.to_config(), sample_out,
                                          workers, bins, hist_max);
            std::cout << "wrote " << paths.spacings_json.string() << ' '
                      << paths.amplitudes_json.string() << ' '
                      << paths.spacings_csv.string() << ' '
                      << paths.amplitudes_csv.string() << '\n';
        } else if (gof->parsed()) {
            const StatSample s = sample_from_json(read_file(gof_sample));
            std::optional<Ensemble> expected;
            if (!gof_ensemble.empty()) {
                expected = parse_ensemble(gof_ensemble);
            }
            const GofReport r = cmd_gof(s, parse_gof_target(gof_target),
                                        expected, gof_seed, workers);
            std::ostringstream text;
            text.precision(6);
            text << "target " << r.description << '\n'
                 << "samples " << r.sample_size << '\n'
                 << "ks " << r.ks << '\n';
            std::cout << text.str();
            if (!gof_out.empty()) {
                write_file(gof_out, text.str());
            }
        } else if (reference->parsed()) {
            if (ref_format != "csv") {
                throw ValidationError("reference emits csv only");
            }
            std::ostringstream csv;
            cmd_reference(csv, parse_ensemble(ref_ensemble),
                          parse_curve_kind(ref_kind), ref_from, ref_to,
                          ref_points);
            if (ref_out.empty()) {
                std::cout << csv.str();
            } else {
                write_file(ref_out, csv.str());
            }
        }
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const IoError &e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

} // namespace cem
