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

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "neumit/errors.h"
#include "test_util.h"

using namespace neumit;
using neumit::testing::naive_power;
using neumit::testing::total_variation;

namespace {

StochasticMatrix example_1q() {
    Eigen::MatrixXd m(2, 2);
    m << 0.9, 0.2, 0.1, 0.8;
    return StochasticMatrix(m);
}

std::vector<double> exact_distribution(const StochasticMatrix &a, unsigned k, const DiagonalState &s) {
    Eigen::Map<const Eigen::VectorXd> p(s.probs().data(), static_cast<Eigen::Index>(s.dim()));
    Eigen::VectorXd q = naive_power(a.matrix(), k) * p;
    return {q.data(), q.data() + q.size()};
}

}  // namespace

TEST(outcome, bitstrings) {
    EXPECT_EQ((Outcome{1, 2}).bits(), "01");
    EXPECT_EQ((Outcome{6, 3}).bits(), "110");
    EXPECT_EQ(outcome_from_bits("110"), (Outcome{6, 3}));
    EXPECT_THROW(outcome_from_bits("12"), ValidationError);
}

TEST(stream_id, layout) {
    EXPECT_EQ(stream_id(0, 1, 2), 1u);
    EXPECT_EQ(stream_id(3, 2, 2), 14u);
}

TEST(sample_state, point_mass) {
    SeededRng rng(1, 0);
    auto s = DiagonalState::basis(3, 5);
    for (int i = 0; i < 100; i++) {
        EXPECT_EQ(sample_state(s, rng).index, 5u);
    }
}

TEST(sample_state, uniform_frequencies) {
    SeededRng rng(2, 0);
    auto s = uniform_state(2);
    std::vector<int> counts(4, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; i++) {
        counts[sample_state(s, rng).index]++;
    }
    for (int c : counts) {
        EXPECT_NEAR(c / double(draws), 0.25, 0.01);
    }
}

TEST(sample_state, deterministic_and_matches_prepared_sampler) {
    DiagonalState s({0.1, 0.0, 0.6, 0.3});
    StateSampler prepared(s);
    SeededRng a(77, 3), b(77, 3), c(77, 3);
    for (int i = 0; i < 2000; i++) {
        auto x = sample_state(s, a).index;
        ASSERT_EQ(x, sample_state(s, b).index);
        ASSERT_EQ(x, prepared.sample(c));
        ASSERT_NE(x, 1u);
    }
}

TEST(apply_noise, identity_never_changes) {
    NoiseModel id(StochasticMatrix::identity(3));
    SeededRng rng(4, 0);
    for (uint64_t x = 0; x < 8; x++) {
        EXPECT_EQ(apply_noise(id, Outcome{x, 3}, rng).index, x);
    }
}

TEST(apply_noise, dense_column_frequency) {
    NoiseModel model(example_1q());
    SeededRng rng(5, 0);
    int zeros = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; i++) {
        zeros += apply_noise(model, Outcome{0, 1}, rng).index == 0;
    }
    EXPECT_NEAR(zeros / double(draws), 0.9, 0.01);
}

TEST(apply_noise, certain_flips) {
    NoiseModel model(TensorProductNoise({1, 1}, {0, 0}));
    SeededRng rng(6, 0);
    for (int i = 0; i < 100; i++) {
        EXPECT_EQ(apply_noise(model, Outcome{0, 2}, rng).bits(), "11");
    }
}

TEST(apply_noise, prepared_device_matches_scan) {
    for (const NoiseModel &model : {NoiseModel(random_noise_matrix(3, 0.7, 8)),
                                    NoiseModel(TensorProductNoise({0.1, 0.3, 0.2}, {0.2, 0.05, 0.4}))}) {
        ReadoutDevice device(model);
        SeededRng a(9, 1), b(9, 1);
        for (int i = 0; i < 5000; i++) {
            uint64_t x = static_cast<uint64_t>(i % 8);
            ASSERT_EQ(apply_noise(model, Outcome{x, 3}, a).index, device.apply(x, b));
        }
    }
}

TEST(apply_noise, rejects_dimension_mismatch) {
    SeededRng rng(1, 1);
    EXPECT_THROW(apply_noise(NoiseModel(example_1q()), Outcome{0, 2}, rng), ValidationError);
}

TEST(apply_noise, tensor_and_dense_samplers_agree_in_distribution) {
    SeededRng pick(10, 0);
    for (int n = 1; n <= 4; n++) {
        std::vector<double> a(n), b(n);
        for (int q = 0; q < n; q++) {
            a[q] = 0.25 * pick.uniform();
            b[q] = 0.25 * pick.uniform();
        }
        TensorProductNoise t(a, b);
        auto dense = t.expand();
        NoiseModel tensor_model(t), dense_model(dense);
        uint64_t d = uint64_t{1} << n;
        uint64_t x = d - 1;
        std::vector<double> expected(d);
        for (uint64_t y = 0; y < d; y++) {
            expected[y] = dense(y, x);
        }
        const int draws = 100000;
        std::vector<double> ft(d, 0), fd(d, 0);
        SeededRng r1(11, n), r2(12, n);
        for (int i = 0; i < draws; i++) {
            ft[apply_noise(tensor_model, Outcome{x, n}, r1).index] += 1.0 / draws;
            fd[apply_noise(dense_model, Outcome{x, n}, r2).index] += 1.0 / draws;
        }
        EXPECT_LE(total_variation(ft, expected), 0.01) << "n=" << n;
        EXPECT_LE(total_variation(fd, expected), 0.01) << "n=" << n;
    }
}

TEST(sequential_measure, identity_reduces_to_ideal_sampling) {
    NoiseModel id(StochasticMatrix::identity(2));
    DiagonalState s({0.1, 0.2, 0.3, 0.4});
    for (unsigned k = 1; k <= 4; k++) {
        SeededRng a(13, k), b(13, k);
        for (int i = 0; i < 500; i++) {
            // Identity passes still consume draws, so compare distributions, not streams.
            uint64_t x = sequential_measure(id, k, s, a).index;
            ASSERT_LT(x, 4u);
        }
        std::vector<double> freq(4, 0);
        const int draws = 100000;
        for (int i = 0; i < draws; i++) {
            freq[sequential_measure(id, k, s, b).index] += 1.0 / draws;
        }
        EXPECT_LE(total_variation(freq, s.probs()), 0.01);
    }
}

TEST(sequential_measure, two_passes_follow_matrix_square) {
    NoiseModel model(example_1q());
    auto s = DiagonalState::basis(1, 0);
    SeededRng rng(14, 0);
    int zeros = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; i++) {
        zeros += sequential_measure(model, 2, s, rng).index == 0;
    }
    EXPECT_NEAR(zeros / double(draws), 0.83, 0.01);
    EXPECT_THROW(sequential_measure(model, 0, s, rng), ValidationError);
}

TEST(sequential_measure, converges_to_matrix_power_distribution) {
    for (int n = 1; n <= 4; n++) {
        auto a = random_noise_matrix(n, 0.6, 200 + n);
        NoiseModel model(a);
        StateSampler sampler(uniform_state(n));
        ReadoutDevice device(model);
        for (unsigned k = 1; k <= 4; k++) {
            auto expected = exact_distribution(a, k, uniform_state(n));
            std::vector<double> freq(expected.size(), 0);
            SeededRng rng(15, 10 * n + k);
            const int draws = 100000;
            for (int i = 0; i < draws; i++) {
                freq[sequential_measure(sampler, device, k, rng)] += 1.0 / draws;
            }
            EXPECT_LE(total_variation(freq, expected), 0.01) << "n=" << n << " k=" << k;
        }
    }
}

TEST(empirical_mean, examples) {
    auto z2 = pauli_z_observable(2);
    std::vector<Outcome> same(10, Outcome{0, 2});
    EXPECT_EQ(empirical_mean(z2, same), 1.0);
    std::vector<Outcome> mixed{{0, 2}, {1, 2}};
    EXPECT_EQ(empirical_mean(z2, mixed), 0.0);
    EXPECT_THROW(empirical_mean(z2, std::vector<Outcome>{}), ValidationError);
    EXPECT_THROW(empirical_mean(z2, std::vector<Outcome>{{0, 3}}), ValidationError);
}

TEST(empirical_mean, hoeffding_shot_count_holds) {
    // M = 2 log2(2 / delta) / eps^2 ideal shots put the mean within eps of the
    // truth with probability at least 1 - delta.
    const double eps = 0.05;
    const double delta = 0.05;
    const auto shots = static_cast<size_t>(std::ceil(2 * std::log2(2 / delta) / (eps * eps)));
    auto s = uniform_state(3);
    auto z = pauli_z_observable(3);
    int within = 0;
    const int reps = 200;
    for (int r = 0; r < reps; r++) {
        SeededRng rng(16, r);
        std::vector<Outcome> outcomes;
        for (size_t m = 0; m < shots; m++) {
            outcomes.push_back(sample_state(s, rng));
        }
        within += std::abs(empirical_mean(z, outcomes)) <= eps;
    }
    EXPECT_GE(within, static_cast<int>((1 - delta) * reps));
}

TEST(empirical_mean, noisy_streams_are_unbiased) {
    auto a = random_noise_matrix(3, 0.5, 31);
    NoiseModel model(a);
    DiagonalState s({0.3, 0.05, 0.1, 0.15, 0.05, 0.2, 0.1, 0.05});
    auto z = pauli_z_observable(3);
    const int shots = 20000;
    for (unsigned k = 1; k <= 3; k++) {
        auto dist = exact_distribution(a, k, s);
        double expected = 0;
        for (uint64_t x = 0; x < 8; x++) {
            expected += z(x) * dist[x];
        }
        SeededRng rng(17, k);
        std::vector<Outcome> outcomes;
        for (int m = 0; m < shots; m++) {
            outcomes.push_back(sequential_measure(model, k, s, rng));
        }
        EXPECT_NEAR(empirical_mean(z, outcomes), expected, 3 / std::sqrt(double(shots)));
    }
}

TEST(outcome_dump, record_format) {
    std::ostringstream out;
    OutcomeDump dump(out);
    dump.write(3, 2, Outcome{5, 4});
    dump.write(0, 1, Outcome{0, 1});
    EXPECT_EQ(out.str(), "3,2,0101\n0,1,0\n");
}
