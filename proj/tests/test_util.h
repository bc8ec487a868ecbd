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

#ifndef NEUMIT_TESTS_TEST_UTIL_H
#define NEUMIT_TESTS_TEST_UTIL_H

#include <Eigen/Dense>
#include <cmath>
#include <vector>

// Reference arithmetic kept deliberately naive so it shares no code path with
// the library under test.
namespace neumit::testing {

inline Eigen::MatrixXd naive_multiply(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < b.cols(); j++) {
            double s = 0;
            for (Eigen::Index k = 0; k < a.cols(); k++) {
                s += a(i, k) * b(k, j);
            }
            c(i, j) = s;
        }
    }
    return c;
}

inline Eigen::MatrixXd naive_power(const Eigen::MatrixXd &a, unsigned k) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    for (unsigned i = 0; i < k; i++) {
        r = naive_multiply(r, a);
    }
    return r;
}

inline Eigen::MatrixXd naive_kron(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    Eigen::MatrixXd c(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            for (Eigen::Index k = 0; k < b.rows(); k++) {
                for (Eigen::Index l = 0; l < b.cols(); l++) {
                    c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return c;
}

inline double brute_one_norm(const Eigen::MatrixXd &b) {
    double best = 0;
    for (Eigen::Index j = 0; j < b.cols(); j++) {
        double s = 0;
        for (Eigen::Index i = 0; i < b.rows(); i++) {
            s += std::abs(b(i, j));
        }
        best = std::max(best, s);
    }
    return best;
}

// Pascal's triangle, exact in 64 bits for the row counts used in tests.
inline std::vector<std::vector<long long>> pascal(int rows) {
    std::vector<std::vector<long long>> t(rows + 1);
    for (int n = 0; n <= rows; n++) {
        t[n].assign(n + 1, 1);
        for (int k = 1; k < n; k++) {
            t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
        }
    }
    return t;
}

inline double total_variation(const std::vector<double> &p, const std::vector<double> &q) {
    double s = 0;
    for (size_t i = 0; i < p.size(); i++) {
        s += std::abs(p[i] - q[i]);
    }
    return s / 2;
}

}  // namespace neumit::testing

#endif
