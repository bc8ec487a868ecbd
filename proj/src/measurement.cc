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

#include "neumit/measurement.h"

#include <algorithm>

#include "neumit/errors.h"

namespace neumit {

namespace {

// Index of the first cumulative entry strictly above u. Falls back to the
// last outcome with positive mass when rounding leaves the total below u.
template <typename It>
uint64_t search_cdf(It begin, It end, double u, uint64_t last_nonzero) {
    auto it = std::upper_bound(begin, end, u);
    if (it == end) {
        return last_nonzero;
    }
    return static_cast<uint64_t>(it - begin);
}

uint64_t flip_bits(uint64_t x, int n, const std::vector<double> &alphas, const std::vector<double> &betas,
                   SeededRng &rng) {
    for (int q = 0; q < n; q++) {
        int shift = n - 1 - q;
        bool bit = (x >> shift) & 1;
        double rate = bit ? betas[q] : alphas[q];
        if (rng.uniform() < rate) {
            x ^= uint64_t{1} << shift;
        }
    }
    return x;
}

// Linear-scan categorical draw with the same semantics as search_cdf.
template <typename Fn>
uint64_t scan_draw(uint64_t dim, Fn prob, double u) {
    double acc = 0;
    uint64_t last_nonzero = 0;
    for (uint64_t i = 0; i < dim; i++) {
        double p = prob(i);
        acc += p;
        if (p > 0) {
            last_nonzero = i;
        }
        if (acc > u) {
            return i;
        }
    }
    return last_nonzero;
}

}  // namespace

std::string Outcome::bits() const {
    std::string s(num_qubits, '0');
    for (int q = 0; q < num_qubits; q++) {
        if ((index >> (num_qubits - 1 - q)) & 1) {
            s[q] = '1';
        }
    }
    return s;
}

Outcome outcome_from_bits(const std::string &bits) {
    if (bits.empty() || bits.size() > 63) {
        throw ValidationError("bitstring must have 1 to 63 characters");
    }
    Outcome out{0, static_cast<int>(bits.size())};
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ValidationError("bitstring may only contain 0 and 1");
        }
        out.index = (out.index << 1) | static_cast<uint64_t>(c == '1');
    }
    return out;
}

uint64_t stream_id(uint64_t trial, unsigned order, unsigned truncation) {
    return trial * (static_cast<uint64_t>(truncation) + 2) + order;
}

StateSampler::StateSampler(const DiagonalState &state) : num_qubits_(state.num_qubits()), last_nonzero_(0) {
    cdf_.reserve(state.dim());
    double acc = 0;
    for (uint64_t x = 0; x < state.dim(); x++) {
        acc += state[x];
        cdf_.push_back(acc);
        if (state[x] > 0) {
            last_nonzero_ = x;
        }
    }
}

uint64_t StateSampler::sample(SeededRng &rng) const {
    return search_cdf(cdf_.begin(), cdf_.end(), rng.uniform(), last_nonzero_);
}

ReadoutDevice::ReadoutDevice(const NoiseModel &model) : num_qubits_(model.num_qubits()), dense_(model.is_dense()) {
    if (!dense_) {
        alphas_ = model.tensor().alphas();
        betas_ = model.tensor().betas();
        return;
    }
    const auto &a = model.dense().matrix();
    auto d = static_cast<uint64_t>(a.rows());
    cdf_.resize(d * d);
    last_nonzero_.assign(d, 0);
    for (uint64_t y = 0; y < d; y++) {
        double acc = 0;
        for (uint64_t x = 0; x < d; x++) {
            double p = a(x, y);
            acc += p;
            cdf_[y * d + x] = acc;
            if (p > 0) {
                last_nonzero_[y] = x;
            }
        }
    }
}

uint64_t ReadoutDevice::apply(uint64_t x, SeededRng &rng) const {
    if (!dense_) {
        return flip_bits(x, num_qubits_, alphas_, betas_, rng);
    }
    uint64_t d = uint64_t{1} << num_qubits_;
    auto begin = cdf_.begin() + static_cast<std::ptrdiff_t>(x * d);
    return search_cdf(begin, begin + static_cast<std::ptrdiff_t>(d), rng.uniform(), last_nonzero_[x]);
}

Outcome sample_state(const DiagonalState &state, SeededRng &rng) {
    double u = rng.uniform();
    return {scan_draw(state.dim(), [&](uint64_t x) { return state[x]; }, u), state.num_qubits()};
}

Outcome apply_noise(const NoiseModel &model, const Outcome &x, SeededRng &rng) {
    int n = model.num_qubits();
    if (x.num_qubits != n) {
        throw ValidationError("outcome and noise model act on different qubit counts");
    }
    if (model.is_tensor()) {
        const auto &t = model.tensor();
        return {flip_bits(x.index, n, t.alphas(), t.betas(), rng), n};
    }
    const auto &a = model.dense();
    double u = rng.uniform();
    return {scan_draw(a.dim(), [&](uint64_t y) { return a(y, x.index); }, u), n};
}

Outcome sequential_measure(const NoiseModel &model, unsigned k, const DiagonalState &state, SeededRng &rng) {
    if (k < 1) {
        throw ValidationError("sequential measurement needs at least one device pass");
    }
    if (model.num_qubits() != state.num_qubits()) {
        throw ValidationError("state and noise model act on different qubit counts");
    }
    Outcome x = sample_state(state, rng);
    for (unsigned i = 0; i < k; i++) {
        x = apply_noise(model, x, rng);
    }
    return x;
}

uint64_t sequential_measure(const StateSampler &state, const ReadoutDevice &device, unsigned k, SeededRng &rng) {
    uint64_t x = state.sample(rng);
    for (unsigned i = 0; i < k; i++) {
        x = device.apply(x, rng);
    }
    return x;
}

double empirical_mean(const Observable &o, std::span<const Outcome> outcomes) {
    if (outcomes.empty()) {
        throw ValidationError("empirical mean of an empty outcome list");
    }
    double sum = 0;
    for (const auto &s : outcomes) {
        if (s.num_qubits != o.num_qubits()) {
            throw ValidationError("outcome and observable act on different qubit counts");
        }
        sum += o(s.index);
    }
    return sum / static_cast<double>(outcomes.size());
}

void OutcomeDump::write(uint64_t trial, unsigned order, const Outcome &outcome) {
    *out_ << trial << ',' << order << ',' << outcome.bits() << '\n';
}

}  // namespace neumit
