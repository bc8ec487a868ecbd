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

#include "neumit/oracle.h"

#include <cfloat>
#include <cmath>
#include <string>

#include "neumit/errors.h"
#include "neumit/mitigation.h"

namespace neumit {

namespace {

constexpr double kMaxCondition = 1e13;

void check_dims(const Observable &o, const NoiseModel &model, const DiagonalState &state) {
    if (o.num_qubits() != state.num_qubits() || model.num_qubits() != state.num_qubits()) {
        throw ValidationError("observable, noise model and state act on different qubit counts");
    }
}

void apply_tensor_in_place(const TensorProductNoise &model, std::vector<double> &v) {
    int n = model.num_qubits();
    for (int q = 0; q < n; q++) {
        uint64_t stride = uint64_t{1} << (n - 1 - q);
        double a = model.alphas()[q];
        double b = model.betas()[q];
        for (uint64_t base = 0; base < v.size(); base += 2 * stride) {
            for (uint64_t i = base; i < base + stride; i++) {
                double p0 = v[i];
                double p1 = v[i + stride];
                v[i] = (1 - a) * p0 + b * p1;
                v[i + stride] = a * p0 + (1 - b) * p1;
            }
        }
    }
}

}  // namespace

std::vector<double> apply_model(const NoiseModel &model, std::span<const double> p) {
    if (p.size() != (size_t{1} << model.num_qubits())) {
        throw ValidationError("vector length does not match the noise model");
    }
    if (model.is_tensor()) {
        std::vector<double> v(p.begin(), p.end());
        apply_tensor_in_place(model.tensor(), v);
        return v;
    }
    Eigen::Map<const Eigen::VectorXd> in(p.data(), static_cast<Eigen::Index>(p.size()));
    Eigen::VectorXd out = model.dense().matrix() * in;
    return {out.data(), out.data() + out.size()};
}

std::vector<double> exact_noisy_expectations(const Observable &o, const NoiseModel &model, const DiagonalState &state,
                                             unsigned max_k) {
    check_dims(o, model, state);
    std::vector<double> out;
    out.reserve(max_k + 1);
    std::vector<double> v = state.probs();
    out.push_back(weighted_sum(o, v));
    for (unsigned k = 1; k <= max_k; k++) {
        v = apply_model(model, v);
        out.push_back(weighted_sum(o, v));
    }
    return out;
}

double exact_noisy_expectation(const Observable &o, const NoiseModel &model, unsigned k, const DiagonalState &state) {
    return exact_noisy_expectations(o, model, state, k).back();
}

double pauli_z_uniform_expectation(const TensorProductNoise &model, unsigned k) {
    double total = 1;
    for (int q = 0; q < model.num_qubits(); q++) {
        double a = model.alphas()[q];
        double b = model.betas()[q];
        // z' = (b - a) + (1 - a - b) z for z = p(0) - p(1).
        double z = 0;
        for (unsigned i = 0; i < k; i++) {
            z = (b - a) + (1 - a - b) * z;
        }
        total *= z;
    }
    return total;
}

QuasiProbabilities invert_histogram(const StochasticMatrix &a, std::span<const double> histogram) {
    if (a.num_qubits() > kMaxOracleQubits) {
        throw ValidationError("direct inversion is limited to " + std::to_string(kMaxOracleQubits) + " qubits");
    }
    if (histogram.size() != a.dim()) {
        throw ValidationError("histogram length does not match the noise matrix");
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a.matrix());
    double rcond = lu.rcond();
    double condition = rcond > 0 ? 1 / rcond : INFINITY;
    if (!(condition <= kMaxCondition)) {
        throw ValidationError("noise matrix is singular or ill-conditioned (1-norm condition estimate " +
                              std::to_string(condition) + ")");
    }
    Eigen::Map<const Eigen::VectorXd> rhs(histogram.data(), static_cast<Eigen::Index>(histogram.size()));
    Eigen::VectorXd q = lu.solve(rhs);
    QuasiProbabilities out;
    out.values.assign(q.data(), q.data() + q.size());
    out.condition_estimate = condition;
    for (double v : out.values) {
        if (v < 0) {
            out.negative_entries++;
        }
    }
    return out;
}

double inverse_mitigation(const Observable &o, const StochasticMatrix &a, const DiagonalState &state) {
    if (o.num_qubits() != a.num_qubits() || state.num_qubits() != a.num_qubits()) {
        throw ValidationError("observable, noise matrix and state act on different qubit counts");
    }
    auto noisy = apply_model(NoiseModel(a), state.probs());
    auto q = invert_histogram(a, noisy);
    return weighted_sum(o, q.values);
}

Eigen::MatrixXd neumann_partial_sum(const StochasticMatrix &a, unsigned truncation) {
    auto d = a.matrix().rows();
    Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(d, d) - a.matrix();
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd sum = term;
    for (unsigned k = 1; k <= truncation; k++) {
        term = term * residual;
        sum += term;
    }
    return sum;
}

Eigen::MatrixXd coefficient_partial_sum(const StochasticMatrix &a, unsigned truncation) {
    auto d = a.matrix().rows();
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
    for (unsigned k = 0; k <= truncation; k++) {
        if (k > 0) {
            power = power * a.matrix();
        }
        sum += static_cast<double>(coefficient(truncation, k)) * power;
    }
    return sum;
}

OracleReport verify_truncation_bound(const Observable &o, const StochasticMatrix &a, const DiagonalState &state,
                                     unsigned truncation) {
    if (a.num_qubits() > kMaxOracleQubits) {
        throw ValidationError("bound verification is limited to " + std::to_string(kMaxOracleQubits) + " qubits");
    }
    if (truncation > 15) {
        throw ValidationError("bound verification is limited to K <= 15");
    }
    NoiseModel model(a);
    auto e = exact_noisy_expectations(o, model, state, truncation + 1);

    OracleReport r;
    r.num_qubits = a.num_qubits();
    r.truncation = truncation;
    r.xi = noise_resistance(a);
    r.true_value = e[0];
    r.e_k.assign(e.begin() + 1, e.end());
    double abs_weight = 0;
    for (unsigned k = 0; k <= truncation; k++) {
        r.combined += static_cast<double>(coefficient(truncation, k)) * r.e_k[k];
        abs_weight += std::abs(static_cast<double>(coefficient(truncation, k)));
    }
    r.bound = truncation_bound(r.xi, truncation);
    r.residual = std::abs(r.true_value - r.combined);
    // Rounding in A^k p and in the signed combination grows with sum_k |c_K(k)|.
    r.slack = 64 * DBL_EPSILON * (abs_weight + 1) * (truncation + 2);
    r.satisfied = r.residual <= r.bound + r.slack;
    try {
        r.inverse_mitigated = inverse_mitigation(o, a, state);
    } catch (const ValidationError &) {
        // Singular A: no direct-inversion baseline.
    }
    return r;
}

nlohmann::json to_json(const OracleReport &report) {
    nlohmann::json doc{
        {"n", report.num_qubits},
        {"K", report.truncation},
        {"xi", report.xi},
        {"true_value", report.true_value},
        {"e_k", report.e_k},
        {"combined", report.combined},
        {"bound", report.bound},
        {"residual", report.residual},
        {"slack", report.slack},
        {"satisfied", report.satisfied},
    };
    doc["inverse_mitigated"] = report.inverse_mitigated ? nlohmann::json(*report.inverse_mitigated) : nlohmann::json();
    return doc;
}

}  // namespace neumit
