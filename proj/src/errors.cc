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

#include "neumit/errors.h"

#include <sstream>

namespace neumit {

namespace {
std::string too_noisy_message(double xi) {
    std::ostringstream out;
    out << "device too noisy: noise resistance xi = " << xi << " must be < 1";
    return out.str();
}

std::string budget_message(uint64_t order, uint64_t delta, uint64_t shots, uint64_t draws, uint64_t cap) {
    std::ostringstream out;
    out << "sampled run needs " << draws << " state preparations (K=" << order << ", Delta=" << delta
        << ", M=" << shots << ") which exceeds the cap of " << cap;
    return out.str();
}
}  // namespace

DeviceTooNoisyError::DeviceTooNoisyError(double xi) : ValidationError(too_noisy_message(xi)), xi(xi) {
}

BudgetError::BudgetError(uint64_t order, uint64_t delta, uint64_t shots, uint64_t draws, uint64_t cap)
    : std::runtime_error(budget_message(order, delta, shots, draws, cap)),
      order(order),
      delta(delta),
      shots(shots),
      draws(draws),
      cap(cap) {
}

}  // namespace neumit
