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

#ifndef NEUMIT_EXPERIMENTS_H
#define NEUMIT_EXPERIMENTS_H

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "neumit/mitigation.h"
#include "neumit/noise_model.h"
#include "neumit/oracle.h"
#include "neumit/rng.h"
#include "neumit/states.h"

namespace neumit {

/// Parses a noise source:
///   tensor:<alphas>[/<betas>]  comma lists, or one value broadcast to n qubits;
///                              betas default to alphas
///   file:<path>                a noise document
///   random:<xi>                random_noise_matrix(n, xi, seed)
///   identity                   noiseless dense device on n qubits
NoiseModel parse_noise_source(const std::string &source, int num_qubits, uint64_t seed);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(uint64_t count, unsigned threads, const std::function<void(uint64_t)> &fn);

/// Shortest round-trip decimal form, independent of locale.
std::string format_real(double v);

/// Tabular output: '#' metadata lines, a header row, comma-separated data.
class CsvTable {
   public:
    CsvTable(std::string schema, std::vector<std::string> columns);

    void set_config(nlohmann::json config) {
        config_ = std::move(config);
    }
    void set_plan(nlohmann::json plan) {
        plan_ = std::move(plan);
    }
    void set_summary(nlohmann::json summary) {
        summary_ = std::move(summary);
    }
    void add_row(std::vector<std::string> cells);

    const std::vector<std::vector<std::string>> &rows() const {
        return rows_;
    }
    void write(std::ostream &out) const;

   private:
    std::string schema_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
    nlohmann::json config_;
    nlohmann::json plan_;
    nlohmann::json summary_;
};

/// Random probability vector on n qubits (normalized exponential draws).
DiagonalState random_state(int num_qubits, SeededRng &rng);

/// Random diagonal observable with values uniform in [-1, 1].
Observable random_observable(int num_qubits, SeededRng &rng);

// ---------------------------------------------------------------------------
// K versus xi

struct TruncationRow {
    double xi;
    unsigned truncation;
};

/// K at xi = xi_min, xi_min + step, ..., up to xi_max (inclusive within 1e-12).
std::vector<TruncationRow> truncation_curve(double epsilon, double xi_min, double xi_max, double step);

CsvTable truncation_table(const std::vector<TruncationRow> &rows);

// ---------------------------------------------------------------------------
// Noisy versus mitigated estimates at fixed size

struct ScatterConfig {
    double xi = 0;
    double epsilon = 0;
    double delta = 0;
    uint64_t trials = 1;
    uint64_t seed = 0;
    Mode mode = Mode::Exact;
    uint64_t draw_cap = kDefaultDrawCap;
    unsigned threads = 1;
    OutcomeDump *dump = nullptr;
};

struct ScatterRow {
    uint64_t trial;
    double noisy;
    double mitigated;
};

struct ScatterResult {
    MitigationPlan plan;
    std::vector<ScatterRow> rows;
    double true_value = 0;
    /// Exact truncated combination, independent of sampling.
    double exact_mitigated = 0;
    double exact_noisy = 0;
    double mean_noisy_bias = 0;
    double mean_mitigated_bias = 0;
    /// Share of trials with |eta - true| <= 2 epsilon.
    double fraction_within = 0;
};

ScatterResult run_scatter(const NoiseModel &model, const DiagonalState &state, const Observable &o,
                          const ScatterConfig &config);

CsvTable scatter_table(const ScatterResult &result, uint64_t seed);

// ---------------------------------------------------------------------------
// Noisy versus mitigated averages as the qubit count grows

struct ScalingConfig {
    /// Noise resistance handed to the estimator for every size; defaults to xi(base).
    std::optional<double> xi;
    double epsilon = 0;
    double delta = 0;
    uint64_t trials = 1;
    uint64_t seed = 0;
    Mode mode = Mode::Exact;
    uint64_t draw_cap = kDefaultDrawCap;
    unsigned threads = 1;
};

struct ScalingRow {
    int num_qubits;
    double xi;
    unsigned truncation;
    double mean_noisy;
    double stderr_noisy;
    double mean_mitigated;
    double stderr_mitigated;
    double true_value;
    /// xi_n^(K+1) for the reduced matrix.
    double bound;
    /// Exact mode only: |mean_mitigated - true| within bound (plus rounding slack).
    bool within_bound;
};

/// Reduces `base` to 1..n qubits, measuring Z on every qubit of the uniform state.
std::vector<ScalingRow> run_scaling(const StochasticMatrix &base, const ScalingConfig &config);

CsvTable scaling_table(const std::vector<ScalingRow> &rows);

// ---------------------------------------------------------------------------
// Oracle sweeps

struct PropertyCheck {
    std::string name;
    bool passed = true;
    uint64_t cases = 0;
    double worst = 0;
    std::string detail;
};

struct VerifyConfig {
    /// Upper qubit count for random instances.
    int max_qubits = 6;
    unsigned max_truncation = 6;
    uint64_t instances = 200;
    uint64_t seed = 0;
};

struct VerifyResult {
    std::vector<PropertyCheck> checks;
    std::vector<OracleReport> reports;

    bool passed() const;
};

/// Checks the one-norm identity, the series identity and the truncation bound
/// on one matrix, for K = 0..max_truncation and `instances` random state and
/// observable pairs (plus uniform state with Z on every qubit).
VerifyResult verify_matrix(const StochasticMatrix &a, const VerifyConfig &config);

/// Same checks on `instances` random matrices with n cycling through
/// 1..max_qubits, K through 0..max_truncation and xi uniform in (0, 1).
VerifyResult verify_random(const VerifyConfig &config);

}  // namespace neumit

#endif
