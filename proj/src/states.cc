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

#include "neumit/states.h"

#include <bit>
#include <cmath>
#include <string>

#include "neumit/errors.h"

namespace neumit {

namespace {

int qubits_for_length(size_t size) {
    if (size < 2 || !std::has_single_bit(size)) {
        throw ValidationError("probability vector length must be a power of two >= 2, got " + std::to_string(size));
    }
    int n = std::countr_zero(size);
    if (n > kMaxStateQubits) {
        throw ValidationError("probability vectors are limited to " + std::to_string(kMaxStateQubits) + " qubits");
    }
    return n;
}

double checked_sum(const std::vector<double> &probs) {
    double sum = 0;
    for (size_t x = 0; x < probs.size(); x++) {
        if (!std::isfinite(probs[x]) || probs[x] < 0) {
            throw ValidationError("probability " + std::to_string(x) + " is negative or not finite");
        }
        sum += probs[x];
    }
    return sum;
}

void check_qubits(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxStateQubits) {
        throw ValidationError("qubit count must be in [1, " + std::to_string(kMaxStateQubits) + "]");
    }
}

}  // namespace

DiagonalState::DiagonalState(std::vector<double> probs) : num_qubits_(qubits_for_length(probs.size())) {
    double sum = checked_sum(probs);
    if (std::abs(sum - 1) > 1e-12) {
        throw ValidationError("probabilities sum to " + std::to_string(sum) + ", not 1");
    }
    probs_ = std::move(probs);
}

DiagonalState DiagonalState::renormalized(std::vector<double> probs, double tolerance) {
    qubits_for_length(probs.size());
    double sum = checked_sum(probs);
    if (std::abs(sum - 1) > tolerance) {
        throw ValidationError("probabilities sum to " + std::to_string(sum) + ", not 1");
    }
    if (std::abs(sum - 1) > 1e-12) {
        for (auto &p : probs) {
            p /= sum;
        }
    }
    return DiagonalState(std::move(probs));
}

DiagonalState DiagonalState::basis(int num_qubits, uint64_t x) {
    check_qubits(num_qubits);
    std::vector<double> probs(size_t{1} << num_qubits, 0.0);
    if (x >= probs.size()) {
        throw ValidationError("basis outcome out of range");
    }
    probs[x] = 1;
    return DiagonalState(std::move(probs));
}

Observable Observable::pauli_z(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 63) {
        throw ValidationError("qubit count must be in [1, 63]");
    }
    return Observable(num_qubits, PauliZ{});
}

Observable Observable::table(std::vector<double> values) {
    int n = qubits_for_length(values.size());
    for (size_t x = 0; x < values.size(); x++) {
        if (!(std::abs(values[x]) <= 1)) {
            throw ValidationError("observable value at " + std::to_string(x) + " is outside [-1, 1]");
        }
    }
    return Observable(n, Table{std::move(values)});
}

Observable Observable::rule(int num_qubits, std::function<double(uint64_t)> fn) {
    if (num_qubits < 1 || num_qubits > 63) {
        throw ValidationError("qubit count must be in [1, 63]");
    }
    return Observable(num_qubits, Rule{std::move(fn)});
}

double Observable::checked_rule(uint64_t x) const {
    double v = std::get<Rule>(rep_).fn(x);
    if (!(std::abs(v) <= 1)) {
        throw ValidationError("observable value at " + std::to_string(x) + " is outside [-1, 1]");
    }
    return v;
}

DiagonalState uniform_state(int num_qubits) {
    check_qubits(num_qubits);
    size_t d = size_t{1} << num_qubits;
    return DiagonalState(std::vector<double>(d, std::ldexp(1.0, -num_qubits)));
}

Observable pauli_z_observable(int num_qubits) {
    return Observable::pauli_z(num_qubits);
}

double weighted_sum(const Observable &o, std::span<const double> p) {
    if (p.size() != (size_t{1} << o.num_qubits())) {
        throw ValidationError("observable and vector dimensions differ");
    }
    double total = 0;
    for (size_t x = 0; x < p.size(); x++) {
        total += o(x) * p[x];
    }
    return total;
}

double exact_expectation(const Observable &o, const DiagonalState &s) {
    if (o.num_qubits() != s.num_qubits()) {
        throw ValidationError("observable and state act on different qubit counts");
    }
    return weighted_sum(o, s.probs());
}

}  // namespace neumit
