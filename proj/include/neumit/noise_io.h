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

#ifndef NEUMIT_NOISE_IO_H
#define NEUMIT_NOISE_IO_H

#include <filesystem>
#include <string>

#include "json.hpp"
#include "neumit/noise_model.h"
#include "neumit/states.h"

namespace neumit {

// Noise documents:
//   {"n": 2, "format": "dense", "matrix": [[...], ...]}   row-major, 2^n rows
//   {"n": 2, "format": "tensor", "alphas": [...], "betas": [...]}
// State documents:
//   {"n": 2, "probs": [...]}
// Columns (or the probability vector) off by more than 1e-9 are rejected;
// smaller deviations are renormalized.

NoiseModel noise_from_json(const nlohmann::json &doc);
nlohmann::json noise_to_json(const NoiseModel &model);

DiagonalState state_from_json(const nlohmann::json &doc);
nlohmann::json state_to_json(const DiagonalState &state);

NoiseModel load_noise(const std::filesystem::path &path);
void store_noise(const NoiseModel &model, const std::filesystem::path &path);

DiagonalState load_state(const std::filesystem::path &path);
void store_state(const DiagonalState &state, const std::filesystem::path &path);

}  // namespace neumit

#endif
