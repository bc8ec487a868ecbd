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

#ifndef NEUMIT_STATES_H
#define NEUMIT_STATES_H

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace neumit {

/// Largest qubit count for which a probability vector is materialized.
constexpr int kMaxStateQubits = 24;

/// Probability vector over n-bit outcomes (the diagonal of a density matrix).
class DiagonalState {
   public:
    /// Validates non-negativity and unit sum within 1e-12.
    explicit DiagonalState(std::vector<double> probs);

    /// Rescales when the sum is off by less than `tolerance`, rejects otherwise.
    static DiagonalState renormalized(std::vector<double> probs, double tolerance);

    /// Point mass on outcome `x`.
    static DiagonalState basis(int num_qubits, uint64_t x);

    int num_qubits() const {
        return num_qubits_;
    }
    uint64_t dim() const {
        return probs_.size();
    }
    const std::vector<double> &probs() const {
        return probs_;
    }
    double operator[](uint64_t x) const {
        return probs_[x];
    }

   private:
    int num_qubits_;
    std::vector<double> probs_;
};

/// Diagonal observable with values O(x) in [-1, 1].
///
/// Stored as an evaluation rule so that sampling never needs a 2^n table.
class Observable {
   public:
    struct PauliZ {};
    struct Table {
        std::vector<double> values;
    };
    struct Rule {
        std::function<double(uint64_t)> fn;
    };

    /// Z on every qubit: O(x) = (-1)^popcount(x).
    static Observable pauli_z(int num_qubits);
    /// Arbitrary table of 2^n values, each in [-1, 1].
    static Observable table(std::vector<double> values);
    /// Caller-supplied rule; values outside [-1, 1] throw when evaluated.
    static Observable rule(int num_qubits, std::function<double(uint64_t)> fn);

    int num_qubits() const {
        return num_qubits_;
    }
    bool is_pauli_z() const {
        return std::holds_alternative<PauliZ>(rep_);
    }

    double operator()(uint64_t x) const {
        if (std::holds_alternative<PauliZ>(rep_)) {
            return (std::popcount(x) & 1) ? -1.0 : 1.0;
        }
        if (auto *t = std::get_if<Table>(&rep_)) {
            return t->values[x];
        }
        return checked_rule(x);
    }

   private:
    Observable(int num_qubits, std::variant<PauliZ, Table, Rule> rep) : num_qubits_(num_qubits), rep_(std::move(rep)) {
    }
    double checked_rule(uint64_t x) const;

    int num_qubits_;
    std::variant<PauliZ, Table, Rule> rep_;
};

DiagonalState uniform_state(int num_qubits);

Observable pauli_z_observable(int num_qubits);

/// sum_x O(x) probs(x).
double exact_expectation(const Observable &o, const DiagonalState &s);

/// sum_x O(x) p(x) for an arbitrary (possibly signed) vector of length 2^n.
double weighted_sum(const Observable &o, std::span<const double> p);

}  // namespace neumit

#endif
