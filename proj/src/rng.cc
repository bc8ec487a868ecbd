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

#include "neumit/rng.h"

namespace neumit {

namespace {
constexpr uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;
}  // namespace

uint64_t splitmix64_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SeededRng::SeededRng(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream), key_(splitmix64_mix(splitmix64_mix(seed) ^ splitmix64_mix(stream * kStreamSalt + 1))) {
}

uint64_t SeededRng::next_u64() {
    counter_++;
    return splitmix64_mix(key_ + counter_ * kGoldenGamma);
}

double SeededRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t SeededRng::below(uint64_t bound) {
    // Rejection sampling keeps the result exactly uniform.
    uint64_t threshold = (0 - bound) % bound;
    while (true) {
        uint64_t r = next_u64();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

}  // namespace neumit
