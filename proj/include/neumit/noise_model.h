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

#ifndef NEUMIT_NOISE_MODEL_H
#define NEUMIT_NOISE_MODEL_H

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

namespace neumit {

/// Dense matrices are limited to 12 qubits (4096 x 4096 entries).
constexpr int kMaxDenseQubits = 12;

/// Columns must sum to one within this tolerance.
constexpr double kStochasticTolerance = 1e-12;

/// Column deviations below this are renormalized when loading from text; larger ones are rejected.
constexpr double kRenormalizeTolerance = 1e-9;

/// Column-stochastic readout noise on n qubits.
///
/// Entry (x, y) is the probability of reading outcome x when the true outcome
/// is y. Indices are the integer value of the bitstring, with qubit 1 as the
/// most significant bit.
class StochasticMatrix {
   public:
    /// Validates `entries` (non-negative, columns summing to one within
    /// kStochasticTolerance, square with power-of-two size).
    explicit StochasticMatrix(Eigen::MatrixXd entries);

    /// Like the constructor, but columns off by less than `tolerance` are
    /// rescaled to sum to one exactly.
    static StochasticMatrix renormalized(Eigen::MatrixXd entries, double tolerance = kRenormalizeTolerance);

    static StochasticMatrix identity(int num_qubits);

    int num_qubits() const {
        return num_qubits_;
    }
    uint64_t dim() const {
        return uint64_t{1} << num_qubits_;
    }
    const Eigen::MatrixXd &matrix() const {
        return entries_;
    }
    double operator()(uint64_t x, uint64_t y) const {
        return entries_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    }

    bool operator==(const StochasticMatrix &other) const {
        return entries_ == other.entries_;
    }

   private:
    struct Unchecked {};
    StochasticMatrix(Eigen::MatrixXd entries, Unchecked);

    friend StochasticMatrix matrix_power(const StochasticMatrix &, unsigned);
    friend StochasticMatrix reduce_qubits(const StochasticMatrix &, int);

    int num_qubits_;
    Eigen::MatrixXd entries_;
};

/// Independent per-qubit readout errors.
///
/// Qubit i (zero-based here, leftmost first) misreads 0 as 1 with rate
/// alphas[i] and 1 as 0 with rate betas[i]. The full matrix is the Kronecker
/// product [[1-a0, b0], [a0, 1-b0]] (x) ... (x) [[1-a_{n-1}, ...]].
class TensorProductNoise {
   public:
    TensorProductNoise(std::vector<double> alphas, std::vector<double> betas);

    /// Same rates on every qubit.
    static TensorProductNoise uniform(int num_qubits, double alpha, double beta);

    int num_qubits() const {
        return static_cast<int>(alphas_.size());
    }
    const std::vector<double> &alphas() const {
        return alphas_;
    }
    const std::vector<double> &betas() const {
        return betas_;
    }

    /// The 2x2 stochastic factor for qubit `q`.
    Eigen::Matrix2d factor(int q) const;

    /// Materializes the 2^n x 2^n Kronecker product. Requires n <= kMaxDenseQubits.
    StochasticMatrix expand() const;

   private:
    std::vector<double> alphas_;
    std::vector<double> betas_;
};

/// Either a general dense matrix or a tensor-product model.
class NoiseModel {
   public:
    NoiseModel(StochasticMatrix dense) : model_(std::move(dense)) {
    }
    NoiseModel(TensorProductNoise tensor) : model_(std::move(tensor)) {
    }

    int num_qubits() const;
    bool is_dense() const {
        return std::holds_alternative<StochasticMatrix>(model_);
    }
    bool is_tensor() const {
        return !is_dense();
    }
    const StochasticMatrix &dense() const {
        return std::get<StochasticMatrix>(model_);
    }
    const TensorProductNoise &tensor() const {
        return std::get<TensorProductNoise>(model_);
    }

    /// The dense matrix, expanding tensor models when they fit under the dense cap.
    StochasticMatrix to_dense() const;

   private:
    std::variant<StochasticMatrix, TensorProductNoise> model_;
};

/// Smallest diagonal entry, min_x A_xx.
double min_diagonal(const StochasticMatrix &a);
double min_diagonal(const TensorProductNoise &model);
double min_diagonal(const NoiseModel &model);

/// xi = 2 (1 - min_x A_xx). The tensor overload uses the per-qubit product
/// of min{1 - alpha_i, 1 - beta_i} and never builds the full matrix.
double noise_resistance(const StochasticMatrix &a);
double noise_resistance(const TensorProductNoise &model);
double noise_resistance(const NoiseModel &model);

/// gamma = sum_i max{alpha_i, beta_i}.
double noise_strength(const TensorProductNoise &model);

/// A^k, with A^0 the identity.
StochasticMatrix matrix_power(const StochasticMatrix &a, unsigned k);

/// Maximum absolute column sum.
double induced_one_norm(const Eigen::MatrixXd &b);

/// Random column-stochastic matrix whose noise resistance is exactly `target_xi`.
///
/// Each diagonal entry is uniform in [1 - xi/2, 1]; one uniformly chosen
/// column is then pinned to 1 - xi/2 so the minimum is hit exactly. The rest
/// of every column is split over the off-diagonal entries in proportion to
/// independent uniform draws. Deterministic in (n, target_xi, seed).
StochasticMatrix random_noise_matrix(int num_qubits, double target_xi, uint64_t seed);

/// Marginal noise on the leftmost `m` qubits.
///
/// Sums over the traced (rightmost) output bits and averages uniformly over
/// the traced input bits, so reduce_qubits(B (x) C, dim B) == B.
StochasticMatrix reduce_qubits(const StochasticMatrix &a, int m);

/// Checks non-negativity and unit column sums within `tolerance`.
bool is_column_stochastic(const Eigen::MatrixXd &b, double tolerance = kStochasticTolerance);

}  // namespace neumit

#endif
