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

#include "neumit/noise_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "neumit/errors.h"
#include "neumit/rng.h"

namespace neumit {

namespace {

// Stream id reserved for matrix generation, far away from trial streams.
constexpr uint64_t kGeneratorStream = 0xA5A5'0000'0000'0001ULL;

int qubits_for_size(Eigen::Index size) {
    if (size <= 1 || (size & (size - 1)) != 0) {
        throw ValidationError("noise matrix size must be a power of two >= 2, got " + std::to_string(size));
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < size) {
        n++;
    }
    if (n > kMaxDenseQubits) {
        throw ValidationError(
            "dense noise matrices are limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    return n;
}

void check_shape(const Eigen::MatrixXd &entries) {
    if (entries.rows() != entries.cols()) {
        throw ValidationError("noise matrix must be square");
    }
}

void check_entries(const Eigen::MatrixXd &entries, double tolerance) {
    for (Eigen::Index c = 0; c < entries.cols(); c++) {
        double sum = 0;
        for (Eigen::Index r = 0; r < entries.rows(); r++) {
            double v = entries(r, c);
            if (!std::isfinite(v) || v < 0) {
                throw ValidationError(
                    "noise matrix entry (" + std::to_string(r) + "," + std::to_string(c) + ") is negative or not finite");
            }
            sum += v;
        }
        if (std::abs(sum - 1) > tolerance) {
            throw ValidationError(
                "noise matrix column " + std::to_string(c) + " sums to " + std::to_string(sum) + ", not 1");
        }
    }
}

void check_rate(double rate, const char *name, size_t q) {
    if (!std::isfinite(rate) || rate < 0 || rate > 1) {
        throw ValidationError(std::string(name) + "[" + std::to_string(q) + "] must lie in [0, 1]");
    }
}

}  // namespace

StochasticMatrix::StochasticMatrix(Eigen::MatrixXd entries) {
    check_shape(entries);
    num_qubits_ = qubits_for_size(entries.rows());
    check_entries(entries, kStochasticTolerance);
    entries_ = std::move(entries);
}

StochasticMatrix::StochasticMatrix(Eigen::MatrixXd entries, Unchecked)
    : num_qubits_(qubits_for_size(entries.rows())), entries_(std::move(entries)) {
}

StochasticMatrix StochasticMatrix::renormalized(Eigen::MatrixXd entries, double tolerance) {
    check_shape(entries);
    qubits_for_size(entries.rows());
    check_entries(entries, tolerance);
    for (Eigen::Index c = 0; c < entries.cols(); c++) {
        double sum = entries.col(c).sum();
        if (std::abs(sum - 1) > kStochasticTolerance) {
            entries.col(c) /= sum;
        }
    }
    return StochasticMatrix(std::move(entries));
}

StochasticMatrix StochasticMatrix::identity(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
        throw ValidationError("qubit count out of range for a dense matrix");
    }
    auto d = Eigen::Index{1} << num_qubits;
    return StochasticMatrix(Eigen::MatrixXd::Identity(d, d), Unchecked{});
}

TensorProductNoise::TensorProductNoise(std::vector<double> alphas, std::vector<double> betas)
    : alphas_(std::move(alphas)), betas_(std::move(betas)) {
    if (alphas_.size() != betas_.size()) {
        throw ValidationError("alphas and betas must have the same length");
    }
    if (alphas_.empty()) {
        throw ValidationError("tensor noise needs at least one qubit");
    }
    if (alphas_.size() > 63) {
        throw ValidationError("tensor noise supports at most 63 qubits");
    }
    for (size_t q = 0; q < alphas_.size(); q++) {
        check_rate(alphas_[q], "alphas", q);
        check_rate(betas_[q], "betas", q);
    }
}

TensorProductNoise TensorProductNoise::uniform(int num_qubits, double alpha, double beta) {
    if (num_qubits < 1) {
        throw ValidationError("qubit count must be positive");
    }
    return TensorProductNoise(std::vector<double>(num_qubits, alpha), std::vector<double>(num_qubits, beta));
}

Eigen::Matrix2d TensorProductNoise::factor(int q) const {
    Eigen::Matrix2d f;
    f << 1 - alphas_[q], betas_[q], alphas_[q], 1 - betas_[q];
    return f;
}

StochasticMatrix TensorProductNoise::expand() const {
    int n = num_qubits();
    if (n > kMaxDenseQubits) {
        throw ValidationError("tensor model with " + std::to_string(n) + " qubits is too large to expand");
    }
    std::vector<Eigen::Matrix2d> factors;
    for (int q = 0; q < n; q++) {
        factors.push_back(factor(q));
    }
    auto d = Eigen::Index{1} << n;
    Eigen::MatrixXd out(d, d);
    for (Eigen::Index y = 0; y < d; y++) {
        for (Eigen::Index x = 0; x < d; x++) {
            double p = 1;
            for (int q = 0; q < n; q++) {
                int shift = n - 1 - q;
                p *= factors[q]((x >> shift) & 1, (y >> shift) & 1);
            }
            out(x, y) = p;
        }
    }
    return StochasticMatrix::renormalized(std::move(out), kStochasticTolerance);
}

int NoiseModel::num_qubits() const {
    return std::visit([](const auto &m) { return m.num_qubits(); }, model_);
}

StochasticMatrix NoiseModel::to_dense() const {
    if (is_dense()) {
        return dense();
    }
    return tensor().expand();
}

double min_diagonal(const StochasticMatrix &a) {
    return a.matrix().diagonal().minCoeff();
}

double min_diagonal(const TensorProductNoise &model) {
    double p = 1;
    for (int q = 0; q < model.num_qubits(); q++) {
        p *= std::min(1 - model.alphas()[q], 1 - model.betas()[q]);
    }
    return p;
}

double min_diagonal(const NoiseModel &model) {
    return model.is_dense() ? min_diagonal(model.dense()) : min_diagonal(model.tensor());
}

double noise_resistance(const StochasticMatrix &a) {
    return 2 * (1 - min_diagonal(a));
}

double noise_resistance(const TensorProductNoise &model) {
    return 2 * (1 - min_diagonal(model));
}

double noise_resistance(const NoiseModel &model) {
    return 2 * (1 - min_diagonal(model));
}

double noise_strength(const TensorProductNoise &model) {
    double gamma = 0;
    for (int q = 0; q < model.num_qubits(); q++) {
        gamma += std::max(model.alphas()[q], model.betas()[q]);
    }
    return gamma;
}

StochasticMatrix matrix_power(const StochasticMatrix &a, unsigned k) {
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(a.matrix().rows(), a.matrix().cols());
    Eigen::MatrixXd base = a.matrix();
    bool first = true;
    while (k > 0) {
        if (k & 1) {
            if (first) {
                result = base;
                first = false;
            } else {
                result = result * base;
            }
        }
        k >>= 1;
        if (k > 0) {
            base = base * base;
        }
    }
    return StochasticMatrix(std::move(result), StochasticMatrix::Unchecked{});
}

double induced_one_norm(const Eigen::MatrixXd &b) {
    if (b.size() == 0) {
        return 0;
    }
    return b.cwiseAbs().colwise().sum().maxCoeff();
}

StochasticMatrix random_noise_matrix(int num_qubits, double target_xi, uint64_t seed) {
    if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
        throw ValidationError("random_noise_matrix: qubit count must be in [1, " + std::to_string(kMaxDenseQubits) + "]");
    }
    if (!(target_xi > 0 && target_xi < 1)) {
        throw ValidationError("random_noise_matrix: target xi must lie in (0, 1)");
    }
    SeededRng rng(seed, kGeneratorStream);
    auto d = Eigen::Index{1} << num_qubits;
    double floor_diag = 1 - target_xi / 2;

    std::vector<double> diag(d);
    for (auto &v : diag) {
        v = floor_diag + (1 - floor_diag) * rng.uniform();
    }
    diag[rng.below(static_cast<uint64_t>(d))] = floor_diag;

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
    std::vector<double> weights(d);
    for (Eigen::Index y = 0; y < d; y++) {
        double total = 0;
        for (Eigen::Index x = 0; x < d; x++) {
            weights[x] = x == y ? 0.0 : rng.uniform();
            total += weights[x];
        }
        double rest = 1 - diag[y];
        for (Eigen::Index x = 0; x < d; x++) {
            out(x, y) = x == y ? diag[y] : (total > 0 ? rest * weights[x] / total : 0.0);
        }
    }
    return StochasticMatrix(std::move(out));
}

StochasticMatrix reduce_qubits(const StochasticMatrix &a, int m) {
    int n = a.num_qubits();
    if (m < 1 || m > n) {
        throw ValidationError(
            "reduce_qubits: target qubit count " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
    }
    int traced = n - m;
    if (traced == 0) {
        return a;
    }
    auto d = Eigen::Index{1} << m;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
    const auto &src = a.matrix();
    for (Eigen::Index c = 0; c < src.cols(); c++) {
        for (Eigen::Index r = 0; r < src.rows(); r++) {
            out(r >> traced, c >> traced) += src(r, c);
        }
    }
    out *= std::ldexp(1.0, -traced);
    return StochasticMatrix(std::move(out), StochasticMatrix::Unchecked{});
}

bool is_column_stochastic(const Eigen::MatrixXd &b, double tolerance) {
    for (Eigen::Index c = 0; c < b.cols(); c++) {
        double sum = 0;
        for (Eigen::Index r = 0; r < b.rows(); r++) {
            if (!(b(r, c) >= 0)) {
                return false;
            }
            sum += b(r, c);
        }
        if (std::abs(sum - 1) > tolerance) {
            return false;
        }
    }
    return true;
}

}  // namespace neumit
