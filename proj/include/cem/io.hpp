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
 * @file io.hpp
 * On-disk formats.
 *
 * Binary matrix: "CEM1", uint32 LE dimension N, then N*N entries as (re, im)
 * pairs of little-endian IEEE-754 doubles, row-major.
 *
 * JSON matrix: {"n_qubits": int, "dim": int, "entries": [[re, im], ...]}.
 *
 * StatSample JSON: {"label", "ensemble", "architecture", "n_qubits",
 * "iterations", "realizations", "values": [...]}; "architecture" is "haar"
 * for oracle samples.
 *
 * Histogram CSV: "bin_left,bin_right,count,density", one row per bin, then
 * "# out_of_range,<count>".
 */

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cem/linalg.hpp"
#include "cem/spectra.hpp"

namespace cem {

void write_matrix_binary(std::ostream &out, const ComplexMatrix &m);
ComplexMatrix read_matrix_binary(std::istream &in);

std::string matrix_to_json(const ComplexMatrix &m, unsigned n_qubits);
ComplexMatrix matrix_from_json(const std::string &text);

std::string sample_to_json(const StatSample &sample);
StatSample sample_from_json(const std::string &text);

void write_histogram_csv(std::ostream &out, const Histogram &h);

/// Whole-file helpers; failures raise IoError.
void write_file(const std::filesystem::path &path, const std::string &bytes);
std::string read_file(const std::filesystem::path &path);

} // namespace cem
