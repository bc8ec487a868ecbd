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

#ifndef NEUMIT_ORACLE_H
#define NEUMIT_ORACLE_H

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "neumit/noise_model.h"
#include "neumit/states.h"

namespace neumit {

/// Largest qubit count accepted by inverse_mitigation and verify_truncation_bound.
constexpr int kMaxOracleQubits = 10;

/// A p for a probability (or signed) vector p. Tensor models are applied one
/// qubit at a time without building the full matrix.
std::vector<double> apply_model(const NoiseModel &model, std::span<const double> p);

/// E^(k) = sum_x O(x) <x| A^k p, computed with k matrix-vector products.
double exact_noisy_expectation(const Observable &o, const NoiseModel &model, unsigned k, const DiagonalState &state);

/// E^(0), ..., E^(max_k) in a single sweep.
std::vector<double> exact_noisy_expectations(const Observable &o, const NoiseModel &model, const DiagonalState &state,
                                             unsigned max_k);

/// E^(k) for O = Z on every qubit, the uniform state and tensor-product noise,
/// at any qubit count. Each qubit contributes beta_i - alpha_i per device pass
/// composed k times, and the per-qubit factors multiply.
double pauli_z_uniform_expectation(const TensorProductNoise &model, unsigned k);

/// Result of applying A^-1 to a histogram.
struct QuasiProbabilities {
    std::vector<double> values;
    int negative_entries = 0;
    double condition_estimate = 0;
};

/// Solves A q = histogram by LU with partial pivoting. Throws ValidationError
/// when A is singular or the 1-norm condition estimate exceeds 1e13.
QuasiProbabilities invert_histogram(const StochasticMatrix &a, std::span<const double> histogram);

/// sum_x O(x) <x| A^-1 (A p): the direct-inversion baseline. Analytically equal to tr[O rho].
double inverse_mitigation(const Observable &o, const StochasticMatrix &a, const DiagonalState &state);

/// sum_{k=0}^{K} (I - A)^k.
Eigen::MatrixXd neumann_partial_sum(const StochasticMatrix &a, unsigned truncation);

/// sum_{k=0}^{K} c_K(k) A^k.
Eigen::MatrixXd coefficient_partial_sum(const StochasticMatrix &a, unsigned truncation);

struct OracleReport {
    int num_qubits = 0;
    unsigned truncation = 0;
    double xi = 0;
    double true_value = 0;
    /// e_k[i] = E^(i+1).
    std::vector<double> e_k;
    double combined = 0;
    double bound = 0;
    double residual = 0;
    /// Floating-point allowance added to `bound` when judging `satisfied`.
    double slack = 0;
    bool satisfied = false;
    std::optional<double> inverse_mitigated;
};

/// Compares the truncated combination against the true value and xi^(K+1).
/// Requires n <= 10 and K <= 15.
OracleReport verify_truncation_bound(const Observable &o, const StochasticMatrix &a, const DiagonalState &state,
                                     unsigned truncation);

nlohmann::json to_json(const OracleReport &report);

}  // namespace neumit

#endif
