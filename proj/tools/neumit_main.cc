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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "neumit/errors.h"
#include "neumit/experiments.h"
#include "neumit/mitigation.h"
#include "neumit/noise_io.h"
#include "neumit/noise_model.h"
#include "neumit/oracle.h"

using namespace neumit;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitProperty = 4;

constexpr const char *kOutputDirEnv = "NEUMIT_OUTPUT_DIR";

struct Flags {
    int qubits = 0;
    std::optional<double> xi;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<uint64_t> trials;
    uint64_t seed = 0;
    std::string mode = "exact";
    std::string noise;
    std::string state;
    std::string out;
    std::string dump;
    uint64_t cap = kDefaultDrawCap;
    unsigned threads = 1;
    double xi_min = 0.01;
    double xi_max = 0.99;
    double step = 0.01;
    unsigned order = 6;
};

// Writes to --out, else $NEUMIT_OUTPUT_DIR/<name>, else stdout.
class Sink {
   public:
    Sink(const std::string &out, const std::string &default_name) {
        std::filesystem::path path;
        if (!out.empty()) {
            path = out;
        } else if (const char *dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
            std::filesystem::create_directories(dir);
            path = std::filesystem::path(dir) / default_name;
        }
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw ValidationError("cannot write " + path.string());
            }
            to_file_ = true;
        }
    }
    std::ostream &stream() {
        return to_file_ ? static_cast<std::ostream &>(file_) : std::cout;
    }
    bool to_file() const {
        return to_file_;
    }

   private:
    std::ofstream file_;
    bool to_file_ = false;
};

json base_config(const std::string &command, const Flags &f) {
    return json{{"command", command}, {"seed", f.seed}};
}

int cmd_resistance(const Flags &f) {
    if (f.noise.empty()) {
        throw ValidationError("resistance needs --noise");
    }
    auto model = parse_noise_source(f.noise, f.qubits, f.seed);
    double eps = f.epsilon.value_or(0.01);
    double xi = noise_resistance(model);
    json report{
        {"neumit", NEUMIT_VERSION},
        {"noise", f.noise},
        {"n", model.num_qubits()},
        {"xi", xi},
        {"min_diagonal", min_diagonal(model)},
        {"epsilon", eps},
    };
    if (model.is_tensor()) {
        report["gamma"] = noise_strength(model.tensor());
    }
    try {
        report["K"] = optimal_truncation(eps, xi);
    } catch (const DeviceTooNoisyError &) {
        report["K"] = nullptr;
        report["note"] = "device too noisy (xi >= 1)";
    }
    Sink sink(f.out, "resistance.json");
    sink.stream() << report.dump(2) << "\n";
    return 0;
}

int cmd_fig3(const Flags &f) {
    double eps = f.epsilon.value_or(0.01);
    auto rows = truncation_curve(eps, f.xi_min, f.xi_max, f.step);
    auto table = truncation_table(rows);
    auto config = base_config("fig3", f);
    config.update({{"epsilon", eps}, {"xi_min", f.xi_min}, {"xi_max", f.xi_max}, {"step", f.step}});
    table.set_config(config);
    Sink sink(f.out, "fig3.csv");
    table.write(sink.stream());
    return 0;
}

int cmd_scatter(const Flags &f) {
    Mode mode = parse_mode(f.mode);
    bool exact = mode == Mode::Exact;
    int n = f.qubits > 0 ? f.qubits : (exact ? 8 : 4);
    double default_xi = exact ? 0.657 : 0.3;
    std::string noise = f.noise.empty() ? "random:" + format_real(f.xi.value_or(default_xi)) : f.noise;
    auto model = parse_noise_source(noise, n, f.seed);

    ScatterConfig config;
    config.xi = f.xi.value_or(noise_resistance(model));
    config.epsilon = f.epsilon.value_or(exact ? 0.01 : 0.05);
    config.delta = f.delta.value_or(exact ? 0.01 : 0.05);
    config.trials = f.trials.value_or(exact ? 1 : 200);
    config.seed = f.seed;
    config.mode = mode;
    config.draw_cap = f.cap;
    config.threads = f.threads;

    std::ofstream dump_file;
    std::optional<OutcomeDump> dump;
    if (!f.dump.empty()) {
        dump_file.open(f.dump);
        if (!dump_file) {
            throw ValidationError("cannot write " + f.dump);
        }
        dump.emplace(dump_file);
        config.dump = &*dump;
    }

    auto result = run_scatter(model, uniform_state(n), pauli_z_observable(n), config);
    auto table = scatter_table(result, f.seed);
    auto echo = base_config("scatter", f);
    echo.update({{"n", n},
                 {"noise", noise},
                 {"xi", config.xi},
                 {"epsilon", config.epsilon},
                 {"delta", config.delta},
                 {"trials", config.trials},
                 {"mode", f.mode},
                 {"cap", f.cap}});
    table.set_config(echo);
    Sink sink(f.out, "scatter.csv");
    table.write(sink.stream());
    if (sink.to_file()) {
        std::cout << "fraction within 2 epsilon: " << result.fraction_within
                  << ", mean bias eta1: " << result.mean_noisy_bias << ", exact eta: " << result.exact_mitigated
                  << "\n";
    }
    return 0;
}

int cmd_scaling(const Flags &f) {
    Mode mode = parse_mode(f.mode);
    int max_n = f.qubits > 0 ? f.qubits : 8;
    std::string noise = f.noise.empty() ? "random:0.657" : f.noise;
    auto base = parse_noise_source(noise, max_n, f.seed).to_dense();

    ScalingConfig config;
    config.xi = f.xi;
    config.epsilon = f.epsilon.value_or(0.01);
    config.delta = f.delta.value_or(0.01);
    config.trials = f.trials.value_or(mode == Mode::Exact ? 1 : 1000);
    config.seed = f.seed;
    config.mode = mode;
    config.draw_cap = f.cap;
    config.threads = f.threads;

    auto rows = run_scaling(base, config);
    auto table = scaling_table(rows);
    double xi = f.xi.value_or(noise_resistance(base));
    auto echo = base_config("scaling", f);
    echo.update({{"max_n", max_n},
                 {"noise", noise},
                 {"xi", xi},
                 {"epsilon", config.epsilon},
                 {"delta", config.delta},
                 {"trials", config.trials},
                 {"mode", f.mode},
                 {"cap", f.cap}});
    table.set_config(echo);
    table.set_plan(to_json(make_plan(config.epsilon, config.delta, xi)));
    Sink sink(f.out, "scaling.csv");
    table.write(sink.stream());
    for (const auto &r : rows) {
        if (!r.within_bound) {
            std::cerr << "truncation bound violated at n=" << r.num_qubits << "\n";
            return kExitProperty;
        }
    }
    return 0;
}

int cmd_verify(const Flags &f) {
    VerifyConfig config;
    config.max_truncation = f.order;
    config.seed = f.seed;
    VerifyResult result;
    json echo = base_config("verify", f);
    if (!f.noise.empty()) {
        auto a = parse_noise_source(f.noise, f.qubits, f.seed).to_dense();
        config.instances = f.trials.value_or(20);
        echo.update({{"noise", f.noise}, {"n", a.num_qubits()}});
        result = verify_matrix(a, config);
    } else {
        config.max_qubits = f.qubits > 0 ? f.qubits : 6;
        config.instances = f.trials.value_or(200);
        echo.update({{"max_n", config.max_qubits}});
        result = verify_random(config);
    }
    echo.update({{"K", config.max_truncation}, {"instances", config.instances}});

    if (!f.out.empty() || std::getenv(kOutputDirEnv) != nullptr) {
        Sink sink(f.out, "verify.jsonl");
        sink.stream() << json{{"config", echo}, {"neumit", NEUMIT_VERSION}}.dump() << "\n";
        for (const auto &r : result.reports) {
            sink.stream() << to_json(r).dump() << "\n";
        }
    }
    for (const auto &c : result.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " cases=" << c.cases
                  << " worst=" << format_real(c.worst);
        if (!c.passed) {
            std::cout << " (" << c.detail << ")";
        }
        std::cout << "\n";
    }
    return result.passed() ? 0 : kExitProperty;
}

int cmd_mitigate(const Flags &f) {
    Mode mode = parse_mode(f.mode);
    if (f.noise.empty()) {
        throw ValidationError("mitigate needs --noise");
    }
    std::optional<DiagonalState> state;
    if (!f.state.empty()) {
        state = load_state(f.state);
    }
    int n = f.qubits > 0 ? f.qubits : (state ? state->num_qubits() : 0);
    auto model = parse_noise_source(f.noise, n, f.seed);
    n = model.num_qubits();
    if (!state) {
        state = uniform_state(n);
    }
    MitigationOptions options;
    options.mode = mode;
    options.seed = f.seed;
    options.draw_cap = f.cap;
    options.threads = f.threads;
    double xi = f.xi.value_or(noise_resistance(model));
    auto o = pauli_z_observable(n);
    auto result = run_mitigation(*state, model, o, xi, f.delta.value_or(0.01), f.epsilon.value_or(0.01), options);
    json doc = to_json(result);
    doc["true_value"] = exact_expectation(o, *state);
    doc["noise"] = f.noise;
    doc["neumit"] = NEUMIT_VERSION;
    Sink sink(f.out, "mitigate.json");
    sink.stream() << doc.dump(2) << "\n";
    return 0;
}

void add_common(CLI::App *cmd, Flags &f) {
    cmd->add_option("--qubits", f.qubits, "Number of qubits");
    cmd->add_option("--noise", f.noise, "tensor:<alphas>[/<betas>] | file:<path> | random:<xi> | identity");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--out", f.out, "Output path (default: $NEUMIT_OUTPUT_DIR or stdout)");
}

void add_estimation(CLI::App *cmd, Flags &f) {
    cmd->add_option("--xi", f.xi, "Noise resistance handed to the estimator");
    cmd->add_option("--epsilon", f.epsilon, "Precision");
    cmd->add_option("--delta", f.delta, "Failure probability");
    cmd->add_option("--trials", f.trials, "Repetitions");
    cmd->add_option("--mode", f.mode, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
    cmd->add_option("--cap", f.cap, "Maximum state preparations per sampled run");
    cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Readout error mitigation with truncated Neumann series"};
    app.set_version_flag("--version", std::string("neumit ") + NEUMIT_VERSION);
    app.require_subcommand(1);
    Flags f;

    auto *resistance = app.add_subcommand("resistance", "Noise resistance, noise strength and implied K");
    add_common(resistance, f);
    resistance->add_option("--epsilon", f.epsilon, "Precision used for K (default 0.01)");

    auto *fig3 = app.add_subcommand("fig3", "Truncation order K as a function of xi (CSV)");
    fig3->add_option("--epsilon", f.epsilon, "Precision (default 0.01)");
    fig3->add_option("--xi-min", f.xi_min, "Smallest xi");
    fig3->add_option("--xi-max", f.xi_max, "Largest xi");
    fig3->add_option("--step", f.step, "xi increment");
    fig3->add_option("--out", f.out, "Output path");

    auto *scatter = app.add_subcommand("scatter", "Noisy and mitigated estimates per trial (CSV)");
    add_common(scatter, f);
    add_estimation(scatter, f);
    scatter->add_option("--dump", f.dump, "Write every sampled outcome as trial,order,bitstring");

    auto *scaling = app.add_subcommand("scaling", "Noisy and mitigated averages for 1..n qubits (CSV)");
    add_common(scaling, f);
    add_estimation(scaling, f);

    auto *verify = app.add_subcommand("verify", "Oracle sweeps: one-norm identity, series identity, bound");
    add_common(verify, f);
    verify->add_option("-K,--order", f.order, "Largest truncation order checked")->check(CLI::Range(0, 15));
    verify->add_option("--trials", f.trials, "Random instances");

    auto *mitigate = app.add_subcommand("mitigate", "Run the estimator once (JSON result)");
    add_common(mitigate, f);
    add_estimation(mitigate, f);
    mitigate->add_option("--state", f.state, "State document (default: uniform)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*resistance) return cmd_resistance(f);
        if (*fig3) return cmd_fig3(f);
        if (*scatter) return cmd_scatter(f);
        if (*scaling) return cmd_scaling(f);
        if (*verify) return cmd_verify(f);
        if (*mitigate) return cmd_mitigate(f);
    } catch (const BudgetError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::overflow_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
