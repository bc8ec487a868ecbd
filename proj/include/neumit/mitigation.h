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

#ifndef NEUMIT_MITIGATION_H
#define NEUMIT_MITIGATION_H

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "neumit/measurement.h"
#include "neumit/noise_model.h"
#include "neumit/states.h"

namespace neumit {

/// Largest truncation order whose binomials fit in 64-bit integers.
constexpr unsigned kMaxTruncationOrder = 30;

/// Default cap on M (K + 1) state preparations in sampled mode.
constexpr uint64_t kDefaultDrawCap = 1'000'000'000;

/// Exact C(n, k). Throws std::overflow_error if the value exceeds 2^63 - 1.
uint64_t binomial(unsigned n, unsigned k);

/// Weight of A^k in the truncated series: (-1)^k C(K + 1, k + 1), for 0 <= k <= K.
int64_t coefficient(unsigned truncation, unsigned k);

/// Smallest K >= 0 with xi^(K+1) <= epsilon, i.e. ceil(log2 eps / log2 xi - 1)
/// floored at zero. Throws DeviceTooNoisyError when xi >= 1.
unsigned optimal_truncation(double epsilon, double xi);

struct SampleBudget {
    /// sum_k c_K(k)^2 = C(2K + 2, K + 1) - 1.
    uint64_t variance_factor;
    /// Shots per order, ceil(2 (K + 1) variance_factor log2(2 / delta) / eps^2).
    uint64_t shots;
};

SampleBudget sample_budget(unsigned truncation, double epsilon, double delta);

/// xi^(K+1): worst-case bias left after truncating at order K.
double truncation_bound(double xi, unsigned truncation);

struct MitigationPlan {
    double epsilon = 0;
    double delta = 0;
    double xi = 0;
    unsigned truncation = 0;
    uint64_t variance_factor = 0;
    uint64_t shots = 0;
    std::vector<int64_t> coefficients;

    /// K was clamped to zero; the mitigated value is then the plain noisy mean.
    bool zero_order() const {
        return truncation == 0;
    }
    /// M (K + 1).
    uint64_t states_required() const;
    /// M (K + 1)(K + 2) / 2.
    uint64_t measurements_required() const;
};

MitigationPlan make_plan(double epsilon, double delta, double xi);

/// sum_{k=1}^{K+1} c_K(k-1) eta_k. Requires exactly K + 1 estimates.
double combine(const MitigationPlan &plan, std::span<const double> eta_k);

enum class Mode { Sampled, Exact };

const char *mode_name(Mode mode);
Mode parse_mode(const std::string &text);

struct MitigationOptions {
    Mode mode = Mode::Sampled;
    uint64_t seed = 0;
    /// Selects the RNG streams; the run for trial t uses streams stream_id(t, k, K).
    uint64_t trial = 0;
    uint64_t draw_cap = kDefaultDrawCap;
    /// Worker threads across orders. Results do not depend on this.
    unsigned threads = 1;
    /// Optional sink for every sampled outcome (forces a single thread).
    OutcomeDump *dump = nullptr;
};

struct MitigationResult {
    double eta = 0;
    /// eta_k[i] estimates E^(i+1).
    std::vector<double> eta_k;
    MitigationPlan plan;
    uint64_t states_consumed = 0;
    uint64_t measurements_applied = 0;
    Mode mode = Mode::Sampled;
    uint64_t seed = 0;
    uint64_t trial = 0;
};

/// Truncated Neumann series mitigation of a noisy readout device.
///
/// In sampled mode each order k = 1..K+1 prepares M states, passes every
/// outcome through the device k times, and averages the observable; the
/// orders are then combined with the signed binomial weights. Exact mode
/// replaces each average by the exact noisy expectation E^(k).
///
/// `xi` is the device's noise resistance as specified by the caller; it is
/// not recomputed from `model`. Throws DeviceTooNoisyError when xi >= 1 and
/// BudgetError when a sampled run would exceed `options.draw_cap`.
MitigationResult run_mitigation(const DiagonalState &state, const NoiseModel &model, const Observable &o, double xi,
                                double delta, double epsilon, const MitigationOptions &options);

/// Convenience overload that takes xi from noise_resistance(model).
MitigationResult run_mitigation(const DiagonalState &state, const NoiseModel &model, const Observable &o,
                                double delta, double epsilon, const MitigationOptions &options);

nlohmann::json to_json(const MitigationPlan &plan);
nlohmann::json to_json(const MitigationResult &result);
MitigationPlan plan_from_json(const nlohmann::json &doc);

}  // namespace neumit

#endif
