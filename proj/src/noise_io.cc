// Copyright 2026 The neumit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "neumit/noise_io.h"

#include <fstream>

#include "neumit/errors.h"

namespace neumit {

using nlohmann::json;

namespace {

int read_qubits(const json &doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
        throw ValidationError("document needs an integer field 'n'");
    }
    int n = doc["n"].get<int>();
    if (n < 1) {
        throw ValidationError("'n' must be positive");
    }
    return n;
}

std::vector<double> read_reals(const json &doc, const char *field) {
    if (!doc.contains(field) || !doc[field].is_array()) {
        throw ValidationError(std::string("document needs an array field '") + field + "'");
    }
    std::vector<double> out;
    for (const auto &v : doc[field]) {
        if (!v.is_number()) {
            throw ValidationError(std::string("field '") + field + "' must hold numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

json parse_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ValidationError("malformed document " + path.string() + ": " + e.what());
    }
}

void write_file(const json &doc, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write " + path.string());
    }
    out << doc.dump(2) << "\n";
}

}  // namespace

NoiseModel noise_from_json(const json &doc) {
    int n = read_qubits(doc);
    if (!doc.contains("format") || !doc["format"].is_string()) {
        throw ValidationError("noise document needs a string field 'format'");
    }
    auto format = doc["format"].get<std::string>();
    if (format == "tensor") {
        auto alphas = read_reals(doc, "alphas");
        auto betas = read_reals(doc, "betas");
        if (alphas.size() != static_cast<size_t>(n) || betas.size() != static_cast<size_t>(n)) {
            throw ValidationError("tensor noise needs n alphas and n betas");
        }
        return TensorProductNoise(std::move(alphas), std::move(betas));
    }
    if (format != "dense") {
        throw ValidationError("unknown noise format '" + format + "'");
    }
    if (n > kMaxDenseQubits) {
        throw ValidationError("dense noise matrices are limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
        throw ValidationError("dense noise document needs an array field 'matrix'");
    }
    const auto &rows = doc["matrix"];
    auto d = Eigen::Index{1} << n;
    if (static_cast<Eigen::Index>(rows.size()) != d) {
        throw ValidationError("dense matrix must have 2^n rows");
    }
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index r = 0; r < d; r++) {
        const auto &row = rows[r];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
            throw ValidationError("dense matrix row " + std::to_string(r) + " must have 2^n entries");
        }
        for (Eigen::Index c = 0; c < d; c++) {
            if (!row[c].is_number()) {
                throw ValidationError("dense matrix entries must be numbers");
            }
            m(r, c) = row[c].get<double>();
        }
    }
    return StochasticMatrix::renormalized(std::move(m), kRenormalizeTolerance);
}

json noise_to_json(const NoiseModel &model) {
    json doc;
    doc["n"] = model.num_qubits();
    if (model.is_tensor()) {
        doc["format"] = "tensor";
        doc["alphas"] = model.tensor().alphas();
        doc["betas"] = model.tensor().betas();
        return doc;
    }
    doc["format"] = "dense";
    const auto &m = model.dense().matrix();
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
    return doc;
}

DiagonalState state_from_json(const json &doc) {
    int n = read_qubits(doc);
    auto probs = read_reals(doc, "probs");
    if (n > kMaxStateQubits || probs.size() != (size_t{1} << n)) {
        throw ValidationError("state needs 2^n probabilities");
    }
    return DiagonalState::renormalized(std::move(probs), kRenormalizeTolerance);
}

json state_to_json(const DiagonalState &state) {
    return json{{"n", state.num_qubits()}, {"probs", state.probs()}};
}

NoiseModel load_noise(const std::filesystem::path &path) {
    return noise_from_json(parse_file(path));
}

void store_noise(const NoiseModel &model, const std::filesystem::path &path) {
    write_file(noise_to_json(model), path);
}

DiagonalState load_state(const std::filesystem::path &path) {
    return state_from_json(parse_file(path));
}

void store_state(const DiagonalState &state, const std::filesystem::path &path) {
    write_file(state_to_json(state), path);
}

}  // namespace neumit
