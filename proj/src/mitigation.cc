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

#include "neumit/mitigation.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "neumit/errors.h"
#include "neumit/oracle.h"

namespace neumit {

namespace {

constexpr uint64_t kMaxExact = uint64_t{1} << 63;

// Ceiling that ignores rounding noise just above an integer.
double snapped_ceil(double x) {
    double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) {
        return r;
    }
    return std::ceil(x);
}

void check_precision(double epsilon) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw ValidationError("precision epsilon must lie in (0, 1)");
    }
}

void check_confidence(double delta) {
    if (!(delta > 0 && delta < 1)) {
        throw ValidationError("failure probability delta must lie in (0, 1)");
    }
}

void check_xi(double xi) {
    if (!(xi >= 0) || std::isnan(xi)) {
        throw ValidationError("noise resistance xi must be non-negative");
    }
    if (xi >= 1) {
        throw DeviceTooNoisyError(xi);
    }
}

struct OrderTally {
    double sum = 0;
    uint64_t states = 0;
    uint64_t measurements = 0;
};

OrderTally sample_order(const StateSampler &sampler, const ReadoutDevice &device, const Observable &o,
                        unsigned order, const MitigationPlan &plan, const MitigationOptions &options) {
    SeededRng rng(options.seed, stream_id(options.trial, order, plan.truncation));
    OrderTally t;
    for (uint64_t m = 0; m < plan.shots; m++) {
        uint64_t s = sequential_measure(sampler, device, order, rng);
        t.sum += o(s);
        t.states++;
        t.measurements += order;
        if (options.dump != nullptr) {
            options.dump->write(options.trial, order, Outcome{s, o.num_qubits()});
        }
    }
    return t;
}

}  // namespace

uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (unsigned i = 1; i <= k; i++) {
        // r * (n - k + i) / i stays integral at every step.
        r = r * (n - k + i) / i;
        if (r >= kMaxExact) {
            throw std::overflow_error("binomial C(" + std::to_string(n) + ", " + std::to_string(k) +
                                      ") does not fit in 63 bits");
        }
    }
    return static_cast<uint64_t>(r);
}

int64_t coefficient(unsigned truncation, unsigned k) {
    if (k > truncation) {
        throw ValidationError("coefficient index k=" + std::to_string(k) + " exceeds K=" + std::to_string(truncation));
    }
    if (truncation > kMaxTruncationOrder) {
        throw std::overflow_error("truncation order above " + std::to_string(kMaxTruncationOrder));
    }
    auto magnitude = static_cast<int64_t>(binomial(truncation + 1, k + 1));
    return (k % 2 == 0) ? magnitude : -magnitude;
}

unsigned optimal_truncation(double epsilon, double xi) {
    check_precision(epsilon);
    check_xi(xi);
    if (xi == 0) {
        return 0;
    }
    double k = snapped_ceil(std::log2(epsilon) / std::log2(xi) - 1);
    if (k <= 0) {
        return 0;
    }
    if (k > 1e9) {
        throw std::overflow_error("truncation order is unreasonably large");
    }
    return static_cast<unsigned>(k);
}

SampleBudget sample_budget(unsigned truncation, double epsilon, double delta) {
    check_precision(epsilon);
    check_confidence(delta);
    if (truncation > kMaxTruncationOrder) {
        throw std::overflow_error("Delta = C(2K+2, K+1) - 1 overflows for K=" + std::to_string(truncation) +
                                  " > " + std::to_string(kMaxTruncationOrder));
    }
    SampleBudget b;
    b.variance_factor = binomial(2 * truncation + 2, truncation + 1) - 1;
    double shots = snapped_ceil(2.0 * (truncation + 1) * static_cast<double>(b.variance_factor) *
                                std::log2(2 / delta) / (epsilon * epsilon));
    if (!(shots < 9.2e18)) {
        throw std::overflow_error("shot count M does not fit in 63 bits");
    }
    b.shots = static_cast<uint64_t>(shots);
    return b;
}

double truncation_bound(double xi, unsigned truncation) {
    return std::pow(xi, static_cast<double>(truncation) + 1);
}

uint64_t MitigationPlan::states_required() const {
    unsigned __int128 v = static_cast<unsigned __int128>(shots) * (truncation + 1);
    if (v >= kMaxExact) {
        throw std::overflow_error("state count overflows");
    }
    return static_cast<uint64_t>(v);
}

uint64_t MitigationPlan::measurements_required() const {
    unsigned __int128 v = static_cast<unsigned __int128>(shots) * (truncation + 1) * (truncation + 2) / 2;
    if (v >= kMaxExact) {
        throw std::overflow_error("measurement count overflows");
    }
    return static_cast<uint64_t>(v);
}

MitigationPlan make_plan(double epsilon, double delta, double xi) {
    MitigationPlan p;
    p.epsilon = epsilon;
    p.delta = delta;
    p.xi = xi;
    p.truncation = optimal_truncation(epsilon, xi);
    auto budget = sample_budget(p.truncation, epsilon, delta);
    p.variance_factor = budget.variance_factor;
    p.shots = budget.shots;
    for (unsigned k = 0; k <= p.truncation; k++) {
        p.coefficients.push_back(coefficient(p.truncation, k));
    }
    return p;
}

double combine(const MitigationPlan &plan, std::span<const double> eta_k) {
    if (eta_k.size() != plan.truncation + 1) {
        throw ValidationError("expected " + std::to_string(plan.truncation + 1) + " per-order estimates, got " +
                              std::to_string(eta_k.size()));
    }
    double eta = 0;
    for (unsigned k = 0; k <= plan.truncation; k++) {
        eta += static_cast<double>(plan.coefficients[k]) * eta_k[k];
    }
    return eta;
}

const char *mode_name(Mode mode) {
    return mode == Mode::Exact ? "exact" : "sampled";
}

Mode parse_mode(const std::string &text) {
    if (text == "exact") {
        return Mode::Exact;
    }
    if (text == "sampled") {
        return Mode::Sampled;
    }
    throw ValidationError("mode must be 'exact' or 'sampled', got '" + text + "'");
}

MitigationResult run_mitigation(const DiagonalState &state, const NoiseModel &model, const Observable &o, double xi,
                                double delta, double epsilon, const MitigationOptions &options) {
    if (state.num_qubits() != model.num_qubits() || o.num_qubits() != model.num_qubits()) {
        throw ValidationError("state, noise model and observable act on different qubit counts");
    }
    MitigationResult result;
    result.plan = make_plan(epsilon, delta, xi);
    result.mode = options.mode;
    result.seed = options.seed;
    result.trial = options.trial;
    const auto &plan = result.plan;
    unsigned orders = plan.truncation + 1;

    if (options.mode == Mode::Exact) {
        auto e = exact_noisy_expectations(o, model, state, orders);
        result.eta_k.assign(e.begin() + 1, e.end());
        result.eta = combine(plan, result.eta_k);
        return result;
    }

    uint64_t draws = plan.states_required();
    if (draws > options.draw_cap) {
        throw BudgetError(plan.truncation, plan.variance_factor, plan.shots, draws, options.draw_cap);
    }

    StateSampler sampler(state);
    ReadoutDevice device(model);
    std::vector<OrderTally> tallies(orders);
    unsigned threads = options.dump != nullptr ? 1 : std::max(1u, std::min(options.threads, orders));
    if (threads == 1) {
        for (unsigned k = 1; k <= orders; k++) {
            tallies[k - 1] = sample_order(sampler, device, o, k, plan, options);
        }
    } else {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < threads; w++) {
            workers.emplace_back([&, w] {
                for (unsigned k = 1 + w; k <= orders; k += threads) {
                    tallies[k - 1] = sample_order(sampler, device, o, k, plan, options);
                }
            });
        }
    }

    for (const auto &t : tallies) {
        result.eta_k.push_back(t.sum / static_cast<double>(plan.shots));
        result.states_consumed += t.states;
        result.measurements_applied += t.measurements;
    }
    result.eta = combine(plan, result.eta_k);
    return result;
}

MitigationResult run_mitigation(const DiagonalState &state, const NoiseModel &model, const Observable &o,
                                double delta, double epsilon, const MitigationOptions &options) {
    return run_mitigation(state, model, o, noise_resistance(model), delta, epsilon, options);
}

nlohmann::json to_json(const MitigationPlan &plan) {
    return nlohmann::json{
        {"epsilon", plan.epsilon},
        {"delta", plan.delta},
        {"xi", plan.xi},
        {"K", plan.truncation},
        {"Delta", plan.variance_factor},
        {"M", plan.shots},
        {"coefficients", plan.coefficients},
        {"zero_order", plan.zero_order()},
        {"states_required", plan.states_required()},
        {"measurements_required", plan.measurements_required()},
    };
}

nlohmann::json to_json(const MitigationResult &result) {
    return nlohmann::json{
        {"eta", result.eta},
        {"eta_k", result.eta_k},
        {"plan", to_json(result.plan)},
        {"states_consumed", result.states_consumed},
        {"measurements_applied", result.measurements_applied},
        {"mode", mode_name(result.mode)},
        {"seed", result.seed},
        {"trial", result.trial},
    };
}

MitigationPlan plan_from_json(const nlohmann::json &doc) {
    try {
        auto plan = make_plan(doc.at("epsilon").get<double>(), doc.at("delta").get<double>(),
                              doc.at("xi").get<double>());
        if (doc.contains("K") && doc["K"].get<unsigned>() != plan.truncation) {
            throw ValidationError("plan document K does not match epsilon and xi");
        }
        if (doc.contains("M") && doc["M"].get<uint64_t>() != plan.shots) {
            throw ValidationError("plan document M does not match epsilon, delta and K");
        }
        return plan;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed plan document: ") + e.what());
    }
}

}  // namespace neumit
