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
#include "cem/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cem/errors.hpp"

namespace cem {

namespace {

using nlohmann::json;

constexpr std::array<char, 4> kMagic = {'C', 'E', 'M', '1'};

template <typename U> void put_le(std::ostream &out, U value) {
    std::array<char, sizeof(U)> bytes{};
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFFU);
    }
    out.write(bytes.data(), bytes.size());
}

template <typename U> U get_le(std::istream &in) {
    std::array<unsigned char, sizeof(U)> bytes{};
    if (!in.read(reinterpret_cast<char *>(bytes.data()), bytes.size())) {
        throw IoError("matrix file truncated");
    }
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        value |= static_cast<U>(bytes[i]) << (8 * i);
    }
    return value;
}

std::optional<Architecture> architecture_from_json(const std::string &s) {
    if (s == "haar") {
        return std::nullopt;
    }
    return parse_architecture(s);
}

} // namespace

void write_matrix_binary(std::ostream &out, const ComplexMatrix &m) {
    if (!m.is_square() ||
        m.rows() > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("binary matrix format needs a square matrix");
    }
    out.write(kMagic.data(), kMagic.size());
    put_le(out, static_cast<std::uint32_t>(m.rows()));
    for (const cplx &z : m.entries()) {
        put_le(out, std::bit_cast<std::uint64_t>(z.real()));
        put_le(out, std::bit_cast<std::uint64_t>(z.imag()));
    }
    if (!out) {
        throw IoError("failed writing binary matrix");
    }
}

ComplexMatrix read_matrix_binary(std::istream &in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw IoError("not a CEM1 matrix file");
    }
    const auto n = get_le<std::uint32_t>(in);
    if (n == 0) {
        throw IoError("matrix file declares zero dimension");
    }
    std::vector<cplx> entries(std::size_t{n} * n);
    for (auto &z : entries) {
        const double re = std::bit_cast<double>(get_le<std::uint64_t>(in));
        const double im = std::bit_cast<double>(get_le<std::uint64_t>(in));
        z = cplx(re, im);
    }
    try {
        return ComplexMatrix(n, n, std::move(entries));
    } catch (const ValidationError &e) {
        throw IoError(std::string("invalid matrix file: ") + e.what());
    }
}

std::string matrix_to_json(const ComplexMatrix &m, unsigned n_qubits) {
    json entries = json::array();
    for (const cplx &z : m.entries()) {
        entries.push_back({z.real(), z.imag()});
    }
    json doc = {{"n_qubits", n_qubits}, {"dim", m.rows()}, {"entries", entries}};
    return doc.dump() + "\n";
}

ComplexMatrix matrix_from_json(const std::string &text) {
    try {
        const json doc = json::parse(text);
        const auto dim = doc.at("dim").get<std::size_t>();
        const auto &raw = doc.at("entries");
        std::vector<cplx> entries;
        entries.reserve(raw.size());
        for (const auto &pair : raw) {
            entries.emplace_back(pair.at(0).get<double>(),
                                 pair.at(1).get<double>());
        }
        return ComplexMatrix(dim, dim, std::move(entries));
    } catch (const json::exception &e) {
        throw IoError(std::string("invalid matrix JSON: ") + e.what());
    } catch (const ValidationError &e) {
        throw IoError(std::string("invalid matrix JSON: ") + e.what());
    }
}

std::string sample_to_json(const StatSample &sample) {
    const auto &meta = sample.metadata;
    json doc = {
        {"label", to_string(sample.label)},
        {"ensemble", to_string(sample.ensemble)},
        {"architecture",
         meta.architecture ? std::string(to_string(*meta.architecture))
                           : std::string("haar")},
        {"n_qubits", meta.n_qubits},
        {"iterations", meta.iterations},
        {"realizations", meta.realizations},
        {"values", sample.values},
    };
    return doc.dump() + "\n";
}

StatSample sample_from_json(const std::string &text) {
    try {
        const json doc = json::parse(text);
        StatSample s;
        s.label = parse_sample_label(doc.at("label").get<std::string>());
        s.ensemble = parse_ensemble(doc.at("ensemble").get<std::string>());
        s.metadata.architecture =
            architecture_from_json(doc.at("architecture").get<std::string>());
        s.metadata.n_qubits = doc.at("n_qubits").get<unsigned>();
        s.metadata.iterations = doc.at("iterations").get<unsigned>();
        s.metadata.realizations = doc.at("realizations").get<std::size_t>();
        s.values = doc.at("values").get<std::vector<double>>();
        return s;
    } catch (const json::exception &e) {
        throw IoError(std::string("invalid sample JSON: ") + e.what());
    } catch (const ValidationError &e) {
        throw IoError(std::string("invalid sample JSON: ") + e.what());
    }
}

void write_histogram_csv(std::ostream &out, const Histogram &h) {
    const auto old_precision = out.precision(17);
    out << "bin_left,bin_right,count,density\n";
    for (const auto &bin : h.bins) {
        out << bin.left << ',' << bin.right << ',' << bin.count << ','
            << bin.density << '\n';
    }
    out << "# out_of_range," << h.out_of_range << '\n';
    out.precision(old_precision);
}

void write_file(const std::filesystem::path &path, const std::string &bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace cem
