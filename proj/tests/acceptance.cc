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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "neumit/errors.h"
#include "neumit/experiments.h"
#include "neumit/measurement.h"
#include "neumit/mitigation.h"
#include "neumit/noise_model.h"
#include "neumit/oracle.h"
#include "neumit/states.h"
#include "test_util.h"

using namespace neumit;
namespace ref = neumit::testing;

namespace {

// Tolerances and limits.
constexpr double kOneNormTol = 1e-12;
constexpr double kSeriesTol = 1e-10;
constexpr double kTvTol = 0.01;
constexpr double kFractionRequired = 0.95;

struct Verdict {
    bool ok;
    std::string detail;
};

struct Criterion {
    std::string name;
    double time_limit_s;
    std::function<Verdict()> check;
};

// A column-stochastic matrix with independent exponential columns; shares no
// code with the library's generator.
StochasticMatrix dirichlet_matrix(int n, SeededRng &rng) {
    auto d = Eigen::Index{1} << n;
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index c = 0; c < d; c++) {
        double total = 0;
        for (Eigen::Index r = 0; r < d; r++) {
            m(r, c) = -std::log1p(-rng.uniform());
            total += m(r, c);
        }
        m.col(c) /= total;
    }
    return StochasticMatrix::renormalized(m, 1e-9);
}

std::string fmt(const char *f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

Verdict one_norm_identity() {
    SeededRng rng(101, 0);
    double worst = 0;
    for (int i = 0; i < 100; i++) {
        int n = 1 + i % 6;
        auto a = i % 2 == 0 ? dirichlet_matrix(n, rng) : random_noise_matrix(n, rng.uniform(), rng.next_u64());
        auto d = a.matrix().rows();
        double lhs = induced_one_norm(Eigen::MatrixXd::Identity(d, d) - a.matrix());
        worst = std::max(worst, std::abs(lhs - noise_resistance(a)));
    }
    return {worst <= kOneNormTol, fmt("100 matrices, worst gap %.3g", worst)};
}

Verdict series_identity() {
    SeededRng rng(102, 0);
    double worst = 0;
    for (int i = 0; i < 50; i++) {
        int n = 1 + i % 5;
        unsigned K = static_cast<unsigned>(i % 7);
        auto a = random_noise_matrix(n, 0.02 + 0.96 * rng.uniform(), rng.next_u64());
        auto d = a.matrix().rows();
        Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(d, d) - a.matrix();
        Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(d, d);
        for (unsigned k = 0; k <= K; k++) {
            expected += ref::naive_power(residual, k);
        }
        worst = std::max(worst, (coefficient_partial_sum(a, K) - expected).cwiseAbs().maxCoeff());
    }
    return {worst <= kSeriesTol, fmt("50 instances, worst entry gap %.3g", worst)};
}

Verdict truncation_bound_sweep() {
    SeededRng rng(103, 0);
    int violations = 0;
    double tightest = 0;
    for (int i = 0; i < 200; i++) {
        int n = 1 + i % 6;
        unsigned K = static_cast<unsigned>(i % 7);
        auto a = random_noise_matrix(n, 0.01 + 0.98 * rng.uniform(), rng.next_u64());
        auto state = random_state(n, rng);
        auto o = random_observable(n, rng);
        auto r = verify_truncation_bound(o, a, state, K);
        // Independent residual from naive powers.
        Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(state.probs().data(), state.dim());
        double combined = 0;
        for (unsigned k = 0; k <= K; k++) {
            Eigen::VectorXd q = ref::naive_power(a.matrix(), k + 1) * p;
            double e = 0;
            for (Eigen::Index x = 0; x < q.size(); x++) {
                e += o(static_cast<uint64_t>(x)) * q(x);
            }
            combined += static_cast<double>(coefficient(K, k)) * e;
        }
        double residual = std::abs(exact_expectation(o, state) - combined);
        double bound = std::pow(noise_resistance(a), K + 1.0);
        if (!r.satisfied || residual > bound + r.slack) {
            violations++;
        }
        if (bound > 0) {
            tightest = std::max(tightest, residual / bound);
        }
    }
    return {violations == 0, fmt("200 instances, %.0f violations, max residual/bound %.3f", violations, tightest)};
}

Verdict truncation_anchor() {
    unsigned k = optimal_truncation(0.01, 0.657);
    return {k == 10, "K(0.01, 0.657) = " + std::to_string(k)};
}

Verdict coefficient_identities() {
    auto t = ref::pascal(40);
    for (unsigned K = 0; K <= 15; K++) {
        long long sum = 0, sum_sq = 0;
        for (unsigned k = 0; k <= K; k++) {
            long long c = coefficient(K, k);
            sum += c;
            sum_sq += c * c;
        }
        if (sum != 1 || sum_sq != t[2 * K + 2][K + 1] - 1 ||
            sample_budget(K, 0.5, 0.5).variance_factor != static_cast<uint64_t>(sum_sq)) {
            return {false, "identity fails at K=" + std::to_string(K)};
        }
    }
    return {true, "K = 0..15 exact"};
}

Verdict sequential_distribution() {
    const int n = 3;
    const unsigned k = 3;
    const int draws = 1'000'000;
    auto a = random_noise_matrix(n, 0.6, 104);
    NoiseModel model(a);
    SeededRng pick(104, 1);
    auto state = random_state(n, pick);
    SeededRng rng(104, 2);
    std::vector<double> freq(8, 0);
    for (int i = 0; i < draws; i++) {
        freq[sequential_measure(model, k, state, rng).index] += 1.0 / draws;
    }
    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(state.probs().data(), 8);
    Eigen::VectorXd q = ref::naive_power(a.matrix(), k) * p;
    double tv = ref::total_variation(freq, std::vector<double>(q.data(), q.data() + 8));
    return {tv <= kTvTol, fmt("TV distance %.5f over 1e6 draws", tv)};
}

Verdict sampled_concentration() {
    const int n = 4;
    ScatterConfig config{.xi = 0.3, .epsilon = 0.05, .delta = 0.05, .trials = 200, .seed = 105, .mode = Mode::Sampled};
    auto model = NoiseModel(random_noise_matrix(n, 0.3, 105));
    auto r = run_scatter(model, uniform_state(n), pauli_z_observable(n), config);
    int within = 0;
    for (const auto &row : r.rows) {
        within += std::abs(row.mitigated) <= 2 * config.epsilon;
    }
    double fraction = within / 200.0;
    return {fraction >= kFractionRequired && r.plan.truncation == 2,
            fmt("K=2, M=%.0f, %.1f%% of 200 trials within 0.1", static_cast<double>(r.plan.shots), 100 * fraction)};
}

Verdict exact_eight_qubits() {
    auto a = random_noise_matrix(8, 0.657, 0);
    ScatterConfig config{.xi = 0.657, .epsilon = 0.01, .delta = 0.01};
    auto r = run_scatter(NoiseModel(a), uniform_state(8), pauli_z_observable(8), config);
    return {std::abs(r.exact_mitigated) <= 0.01 && r.plan.truncation == 10,
            fmt("K=10, E1=%.3g, mitigated=%.3g", r.exact_noisy, r.exact_mitigated)};
}

Verdict scaling_bias_removal() {
    auto base = random_noise_matrix(8, 0.657, 0);
    ScalingConfig config{.epsilon = 0.01, .delta = 0.01};
    auto rows = run_scaling(base, config);
    int bound_ok = 0, improved = 0;
    for (const auto &r : rows) {
        bound_ok += r.within_bound;
        improved += std::abs(r.mean_noisy - r.true_value) > std::abs(r.mean_mitigated - r.true_value);
    }
    return {bound_ok == 8 && improved >= 6,
            fmt("bound holds for %.0f/8 sizes, noisy error larger for %.0f/8", bound_ok, improved)};
}

Verdict cost_accounting() {
    // One sampled run per K = 0..10 at loose precision so K = 10 stays affordable.
    NoiseModel model(TensorProductNoise({0.02}, {0.03}));
    auto state = uniform_state(1);
    auto z = pauli_z_observable(1);
    for (unsigned K = 0; K <= 10; K++) {
        double xi = std::pow(0.99, 1.0 / (K + 0.5));
        MitigationOptions opts{.mode = Mode::Sampled, .seed = 106};
        auto r = run_mitigation(state, model, z, xi, 0.99, 0.99, opts);
        const auto &p = r.plan;
        uint64_t loop = 0;
        for (unsigned k = 1; k <= K + 1; k++) {
            loop += k * p.shots;
        }
        if (p.truncation != K || r.states_consumed != p.shots * (K + 1) ||
            r.measurements_applied != p.shots * (K + 1) * (K + 2) / 2 || r.measurements_applied != loop) {
            return {false, "counter mismatch at K=" + std::to_string(K)};
        }
    }
    return {true, "sampled counters match M(K+1) and M(K+1)(K+2)/2 for K = 0..10"};
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {"one-norm identity ||I-A||_1 = xi", 5, one_norm_identity},
        {"coefficient series equals Neumann partial sum", 10, series_identity},
        {"truncation bound xi^(K+1) on random instances", 30, truncation_bound_sweep},
        {"K = 10 at eps = 0.01, xi = 0.657", 1, truncation_anchor},
        {"coefficient sum and square-sum identities", 1, coefficient_identities},
        {"sequential measurement follows A^k", 60, sequential_distribution},
        {"sampled estimator concentration (xi=0.3, eps=delta=0.05, n=4)", 600, sampled_concentration},
        {"exact mitigation at n=8, xi=0.657", 120, exact_eight_qubits},
        {"bound and bias removal across reduced sizes", 120, scaling_bias_removal},
        {"cost accounting closed forms", 600, cost_accounting},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Verdict out;
        try {
            out = c.check();
        } catch (const std::exception &e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = out.ok && seconds < c.time_limit_s;
        failures += !ok;
        std::printf("[%s] %s: %s (%.2fs, limit %.0fs)\n", ok ? "PASS" : "FAIL", c.name.c_str(), out.detail.c_str(),
                    seconds, c.time_limit_s);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
