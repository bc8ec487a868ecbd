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

#ifndef NEUMIT_ERRORS_H
#define NEUMIT_ERRORS_H

#include <cstdint>
#include <stdexcept>
#include <string>

namespace neumit {

/// Malformed input: bad dimensions, non-stochastic matrices, out-of-range parameters.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The readout device has noise resistance xi >= 1, so the Neumann series diverges.
struct DeviceTooNoisyError : ValidationError {
    explicit DeviceTooNoisyError(double xi);
    double xi;
};

/// A sampled run would exceed the configured draw cap.
struct BudgetError : std::runtime_error {
    BudgetError(uint64_t order, uint64_t delta, uint64_t shots, uint64_t draws, uint64_t cap);
    uint64_t order;
    uint64_t delta;
    uint64_t shots;
    uint64_t draws;
    uint64_t cap;
};

}  // namespace neumit

#endif
