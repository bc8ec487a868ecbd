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

#include "neumit/experiments.h"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <charconv>
#include <cmath>
#include <sstream>
#include <mutex>
#include <thread>

#include "neumit/errors.h"
#include "neumit/noise_io.h"

namespace neumit {

namespace {

std::vector<double> parse_rate_list(const std::string &text, int num_qubits) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        double v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw ValidationError("bad rate '" + item + "' in tensor noise source");
        }
        out.push_back(v);
    }
    if (num_qubits <= 0) {
        return out;
    }
    if (out.size() == 1 && num_qubits > 1) {
        out.assign(num_qubits, out[0]);
    }
    if (out.size() != static_cast<size_t>(num_qubits)) {
        throw ValidationError("tensor noise source needs 1 or " + std::to_string(num_qubits) + " rates");
    }
    return out;
}

double parse_real(const std::string &text, const char *what) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ValidationError(std::string("bad ") + what + " '" + text + "'");
    }
    return v;
}

struct MeanStderr {
    double mean = 0;
    double stderr_ = 0;
};

MeanStderr mean_stderr(const std::vector<double> &v) {
    MeanStderr out;
    if (v.empty()) {
        return out;
    }
    double sum = 0;
    for (double x : v) {
        sum += x;
    }
    out.mean = sum / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0;
        for (double x : v) {
            ss += (x - out.mean) * (x - out.mean);
        }
        out.stderr_ = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
    }
    return out;
}

void record(PropertyCheck &check, bool ok, double value, const std::string &what) {
    check.cases++;
    check.worst = std::max(check.worst, value);
    if (!ok && check.passed) {
        check.passed = false;
        check.detail = what;
    }
}

// Runs the three oracle checks on one matrix and one (state, observable) pair per K.
void check_instance(const StochasticMatrix &a, const DiagonalState &state, const Observable &o, unsigned truncation,
                    VerifyResult &out) {
    auto &norm = out.checks[0];
    auto &series = out.checks[1];
    auto &bound = out.checks[2];
    auto d = a.matrix().rows();

    double xi = noise_resistance(a);
    double gap = std::abs(induced_one_norm(Eigen::MatrixXd::Identity(d, d) - a.matrix()) - xi);
    record(norm, gap <= 1e-12, gap, "one-norm of I - A differs from xi by " + format_real(gap));

    double diff = (coefficient_partial_sum(a, truncation) - neumann_partial_sum(a, truncation)).cwiseAbs().maxCoeff();
    record(series, diff <= 1e-10, diff,
           "series identity off by " + format_real(diff) + " at K=" + std::to_string(truncation));

    auto report = verify_truncation_bound(o, a, state, truncation);
    double excess = report.residual - report.bound;
    record(bound, report.satisfied, std::max(0.0, excess),
           "residual " + format_real(report.residual) + " exceeds bound " + format_real(report.bound));
    out.reports.push_back(std::move(report));
}

VerifyResult empty_result() {
    VerifyResult r;
    r.checks = {
        {"one_norm_identity", true, 0, 0, ""},
        {"neumann_partial_sum_identity", true, 0, 0, ""},
        {"truncation_bound", true, 0, 0, ""},
    };
    return r;
}

}  // namespace

NoiseModel parse_noise_source(const std::string &source, int num_qubits, uint64_t seed) {
    auto colon = source.find(':');
    std::string kind = source.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : source.substr(colon + 1);
    if (kind == "identity") {
        return StochasticMatrix::identity(num_qubits);
    }
    if (kind == "file") {
        auto model = load_noise(arg);
        if (model.num_qubits() != num_qubits && num_qubits > 0) {
            throw ValidationError("noise file has " + std::to_string(model.num_qubits()) + " qubits, expected " +
                                  std::to_string(num_qubits));
        }
        return model;
    }
    if (kind == "random") {
        return random_noise_matrix(num_qubits, parse_real(arg, "xi"), seed);
    }
    if (kind == "tensor") {
        auto slash = arg.find('/');
        auto alphas = parse_rate_list(arg.substr(0, slash), num_qubits);
        auto betas = slash == std::string::npos ? alphas
                                                : parse_rate_list(arg.substr(slash + 1), static_cast<int>(alphas.size()));
        return TensorProductNoise(std::move(alphas), std::move(betas));
    }
    throw ValidationError("unknown noise source '" + source + "' (expected tensor:, file:, random: or identity)");
}

void parallel_for(uint64_t count, unsigned threads, const std::function<void(uint64_t)> &fn) {
    threads = static_cast<unsigned>(std::max<uint64_t>(1, std::min<uint64_t>(threads, count)));
    if (threads <= 1) {
        for (uint64_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < threads; w++) {
            workers.emplace_back([&] {
                for (uint64_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                        next = count;
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

CsvTable::CsvTable(std::string schema, std::vector<std::string> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) {
        throw std::logic_error("csv row width does not match the header");
    }
    rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream &out) const {
    out << "# neumit " << NEUMIT_VERSION << "\n";
    out << "# schema: " << schema_ << "\n";
    if (!config_.is_null()) {
        out << "# config: " << config_.dump() << "\n";
    }
    if (!plan_.is_null()) {
        out << "# plan: " << plan_.dump() << "\n";
    }
    for (size_t i = 0; i < columns_.size(); i++) {
        out << (i ? "," : "") << columns_[i];
    }
    out << "\n";
    for (const auto &row : rows_) {
        for (size_t i = 0; i < row.size(); i++) {
            out << (i ? "," : "") << row[i];
        }
        out << "\n";
    }
    if (!summary_.is_null()) {
        out << "# summary: " << summary_.dump() << "\n";
    }
}

DiagonalState random_state(int num_qubits, SeededRng &rng) {
    std::vector<double> probs(size_t{1} << num_qubits);
    double total = 0;
    for (auto &p : probs) {
        p = -std::log1p(-rng.uniform());
        total += p;
    }
    for (auto &p : probs) {
        p /= total;
    }
    return DiagonalState::renormalized(std::move(probs), 1e-9);
}

Observable random_observable(int num_qubits, SeededRng &rng) {
    std::vector<double> values(size_t{1} << num_qubits);
    for (auto &v : values) {
        v = 2 * rng.uniform() - 1;
    }
    return Observable::table(std::move(values));
}

std::vector<TruncationRow> truncation_curve(double epsilon, double xi_min, double xi_max, double step) {
    if (!(xi_min > 0 && xi_max < 1 && xi_min <= xi_max)) {
        throw ValidationError("xi range must satisfy 0 < xi_min <= xi_max < 1");
    }
    if (!(step > 0)) {
        throw ValidationError("xi step must be positive");
    }
    std::vector<TruncationRow> rows;
    for (uint64_t i = 0;; i++) {
        // Round to 12 decimals so grid points print as typed.
        double xi = std::round((xi_min + static_cast<double>(i) * step) * 1e12) / 1e12;
        if (xi > xi_max + 1e-12) {
            break;
        }
        rows.push_back({xi, optimal_truncation(epsilon, xi)});
    }
    return rows;
}

CsvTable truncation_table(const std::vector<TruncationRow> &rows) {
    CsvTable t("neumit.fig3.v1", {"xi", "K"});
    for (const auto &r : rows) {
        t.add_row({format_real(r.xi), std::to_string(r.truncation)});
    }
    return t;
}

ScatterResult run_scatter(const NoiseModel &model, const DiagonalState &state, const Observable &o,
                          const ScatterConfig &config) {
    ScatterResult out;
    out.plan = make_plan(config.epsilon, config.delta, config.xi);
    out.true_value = exact_expectation(o, state);
    auto exact = exact_noisy_expectations(o, model, state, out.plan.truncation + 1);
    out.exact_noisy = exact[1];
    out.exact_mitigated = combine(out.plan, std::span<const double>(exact).subspan(1));

    MitigationOptions options;
    options.mode = config.mode;
    options.seed = config.seed;
    options.draw_cap = config.draw_cap;
    options.dump = config.dump;

    uint64_t trials = config.mode == Mode::Exact ? 1 : config.trials;
    if (trials == 0) {
        throw ValidationError("need at least one trial");
    }
    if (config.mode == Mode::Sampled && out.plan.states_required() > config.draw_cap) {
        const auto &p = out.plan;
        throw BudgetError(p.truncation, p.variance_factor, p.shots, p.states_required(), config.draw_cap);
    }
    out.rows.resize(trials);
    unsigned threads = config.dump != nullptr ? 1 : config.threads;
    parallel_for(trials, threads, [&](uint64_t t) {
        auto opts = options;
        opts.trial = t;
        auto r = run_mitigation(state, model, o, config.xi, config.delta, config.epsilon, opts);
        out.rows[t] = {t, r.eta_k[0], r.eta};
    });

    uint64_t within = 0;
    for (const auto &r : out.rows) {
        out.mean_noisy_bias += r.noisy - out.true_value;
        out.mean_mitigated_bias += r.mitigated - out.true_value;
        if (std::abs(r.mitigated - out.true_value) <= 2 * config.epsilon) {
            within++;
        }
    }
    out.mean_noisy_bias /= static_cast<double>(trials);
    out.mean_mitigated_bias /= static_cast<double>(trials);
    out.fraction_within = static_cast<double>(within) / static_cast<double>(trials);
    return out;
}

CsvTable scatter_table(const ScatterResult &result, uint64_t seed) {
    CsvTable t("neumit.scatter.v1", {"trial", "eta1", "eta", "seed"});
    for (const auto &r : result.rows) {
        t.add_row({std::to_string(r.trial), format_real(r.noisy), format_real(r.mitigated), std::to_string(seed)});
    }
    t.set_plan(to_json(result.plan));
    t.set_summary({
        {"true_value", result.true_value},
        {"exact_eta1", result.exact_noisy},
        {"exact_eta", result.exact_mitigated},
        {"mean_bias_eta1", result.mean_noisy_bias},
        {"mean_bias_eta", result.mean_mitigated_bias},
        {"fraction_within_2eps", result.fraction_within},
        {"trials", result.rows.size()},
    });
    return t;
}

std::vector<ScalingRow> run_scaling(const StochasticMatrix &base, const ScalingConfig &config) {
    double xi = config.xi.value_or(noise_resistance(base));
    auto plan = make_plan(config.epsilon, config.delta, xi);
    if (config.mode == Mode::Sampled && plan.states_required() > config.draw_cap) {
        throw BudgetError(plan.truncation, plan.variance_factor, plan.shots, plan.states_required(), config.draw_cap);
    }
    if (config.trials == 0) {
        throw ValidationError("need at least one trial");
    }
    std::vector<ScalingRow> rows;
    for (int n = 1; n <= base.num_qubits(); n++) {
        NoiseModel reduced(reduce_qubits(base, n));
        auto state = uniform_state(n);
        auto o = pauli_z_observable(n);

        ScalingRow row{};
        row.num_qubits = n;
        row.xi = noise_resistance(reduced);
        row.truncation = plan.truncation;
        row.true_value = exact_expectation(o, state);
        row.bound = truncation_bound(row.xi, plan.truncation);

        if (config.mode == Mode::Exact) {
            MitigationOptions opts;
            opts.mode = Mode::Exact;
            auto r = run_mitigation(state, reduced, o, xi, config.delta, config.epsilon, opts);
            row.mean_noisy = r.eta_k[0];
            row.mean_mitigated = r.eta;
            double weight = 0;
            for (auto c : plan.coefficients) {
                weight += std::abs(static_cast<double>(c));
            }
            double slack = 64 * DBL_EPSILON * (weight + 1) * (plan.truncation + 2);
            row.within_bound = std::abs(row.mean_mitigated - row.true_value) <= row.bound + slack;
        } else {
            std::vector<double> noisy(config.trials);
            std::vector<double> mitigated(config.trials);
            parallel_for(config.trials, config.threads, [&](uint64_t t) {
                MitigationOptions opts;
                opts.mode = Mode::Sampled;
                opts.seed = config.seed;
                // Each size gets its own block of trial streams.
                opts.trial = static_cast<uint64_t>(n - 1) * config.trials + t;
                opts.draw_cap = config.draw_cap;
                auto r = run_mitigation(state, reduced, o, xi, config.delta, config.epsilon, opts);
                noisy[t] = r.eta_k[0];
                mitigated[t] = r.eta;
            });
            auto a = mean_stderr(noisy);
            auto b = mean_stderr(mitigated);
            row.mean_noisy = a.mean;
            row.stderr_noisy = a.stderr_;
            row.mean_mitigated = b.mean;
            row.stderr_mitigated = b.stderr_;
            row.within_bound = true;
        }
        rows.push_back(row);
    }
    return rows;
}

CsvTable scaling_table(const std::vector<ScalingRow> &rows) {
    CsvTable t("neumit.scaling.v1", {"n", "xi_n", "K", "mean_noisy", "stderr_noisy", "mean_mitigated",
                                     "stderr_mitigated", "true_value", "bound"});
    for (const auto &r : rows) {
        t.add_row({std::to_string(r.num_qubits), format_real(r.xi), std::to_string(r.truncation),
                   format_real(r.mean_noisy), format_real(r.stderr_noisy), format_real(r.mean_mitigated),
                   format_real(r.stderr_mitigated), format_real(r.true_value), format_real(r.bound)});
    }
    return t;
}

bool VerifyResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck &c) { return c.passed; });
}

VerifyResult verify_matrix(const StochasticMatrix &a, const VerifyConfig &config) {
    if (a.num_qubits() > kMaxOracleQubits) {
        throw ValidationError("verify is limited to " + std::to_string(kMaxOracleQubits) + " qubits");
    }
    auto out = empty_result();
    SeededRng rng(config.seed, 0xC0FFEE);
    int n = a.num_qubits();
    for (unsigned k = 0; k <= config.max_truncation; k++) {
        check_instance(a, uniform_state(n), pauli_z_observable(n), k, out);
        for (uint64_t i = 0; i < config.instances; i++) {
            auto state = random_state(n, rng);
            auto o = random_observable(n, rng);
            check_instance(a, state, o, k, out);
        }
    }
    return out;
}

VerifyResult verify_random(const VerifyConfig &config) {
    if (config.max_qubits < 1 || config.max_qubits > kMaxOracleQubits) {
        throw ValidationError("verify qubit count must be in [1, " + std::to_string(kMaxOracleQubits) + "]");
    }
    auto out = empty_result();
    SeededRng rng(config.seed, 0xC0FFEE);
    for (uint64_t i = 0; i < config.instances; i++) {
        int n = 1 + static_cast<int>(i % static_cast<uint64_t>(config.max_qubits));
        unsigned k = static_cast<unsigned>(i % (config.max_truncation + 1));
        double xi = 1e-3 + 0.998 * rng.uniform();
        auto a = random_noise_matrix(n, xi, rng.next_u64());
        auto state = random_state(n, rng);
        auto o = random_observable(n, rng);
        check_instance(a, state, o, k, out);
    }
    return out;
}

}  // namespace neumit
