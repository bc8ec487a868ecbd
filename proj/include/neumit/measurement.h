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

#ifndef NEUMIT_MEASUREMENT_H
#define NEUMIT_MEASUREMENT_H

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "neumit/noise_model.h"
#include "neumit/rng.h"
#include "neumit/states.h"

namespace neumit {

/// One n-bit measurement record.
struct Outcome {
    uint64_t index = 0;
    int num_qubits = 0;

    /// Bitstring with qubit 1 first, e.g. index 1 on two qubits is "01".
    std::string bits() const;

    bool operator==(const Outcome &) const = default;
};

Outcome outcome_from_bits(const std::string &bits);

/// Stream id for (trial, order) given truncation order K: trial * (K + 2) + order.
uint64_t stream_id(uint64_t trial, unsigned order, unsigned truncation);

/// Draws outcomes from a fixed probability vector via a cached cumulative table.
class StateSampler {
   public:
    explicit StateSampler(const DiagonalState &state);

    int num_qubits() const {
        return num_qubits_;
    }
    uint64_t sample(SeededRng &rng) const;

   private:
    int num_qubits_;
    std::vector<double> cdf_;
    uint64_t last_nonzero_;
};

/// A noisy readout device prepared for repeated use.
///
/// Dense models cache one cumulative column per true outcome and draw with a
/// binary search; tensor models flip each bit independently in O(n). Given
/// the same generator state, `apply` returns exactly what apply_noise returns.
class ReadoutDevice {
   public:
    explicit ReadoutDevice(const NoiseModel &model);

    int num_qubits() const {
        return num_qubits_;
    }
    uint64_t apply(uint64_t x, SeededRng &rng) const;

   private:
    int num_qubits_;
    bool dense_;
    std::vector<double> cdf_;  // column-major, dim x dim
    std::vector<uint64_t> last_nonzero_;
    std::vector<double> alphas_;
    std::vector<double> betas_;
};

/// Ideal computational-basis measurement of `state`.
Outcome sample_state(const DiagonalState &state, SeededRng &rng);

/// One pass through the noisy device: returns y with probability A(y, x).
Outcome apply_noise(const NoiseModel &model, const Outcome &x, SeededRng &rng);

/// Measures `state`, then feeds the outcome through the noisy device `k`
/// times and returns the last outcome. Effective noise is A^k.
Outcome sequential_measure(const NoiseModel &model, unsigned k, const DiagonalState &state, SeededRng &rng);

/// Same chain using prepared samplers.
uint64_t sequential_measure(const StateSampler &state, const ReadoutDevice &device, unsigned k, SeededRng &rng);

/// (1/M) sum_m O(s^m). Rejects an empty list.
double empirical_mean(const Observable &o, std::span<const Outcome> outcomes);

/// Writes newline-delimited `trial,order,bitstring` records.
class OutcomeDump {
   public:
    explicit OutcomeDump(std::ostream &out) : out_(&out) {
    }
    void write(uint64_t trial, unsigned order, const Outcome &outcome);

   private:
    std::ostream *out_;
};

}  // namespace neumit

#endif
