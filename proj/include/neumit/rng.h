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

#ifndef NEUMIT_RNG_H
#define NEUMIT_RNG_H

#include <cstdint>

namespace neumit {

/// Counter-based pseudo random source keyed by (seed, stream).
///
/// Output i of a stream is a SplitMix64 finalizer applied to
/// `key + (i + 1) * golden_gamma`, where `key` mixes the seed and the stream
/// id. Only integer arithmetic is involved, so sequences are identical on
/// every platform and compiler. Distinct stream ids give statistically
/// independent sequences, which is what lets trials and orders run in any
/// order (or concurrently) without changing results.
class SeededRng {
   public:
    SeededRng(uint64_t seed, uint64_t stream);

    uint64_t seed() const {
        return seed_;
    }
    uint64_t stream() const {
        return stream_;
    }
    /// Number of 64-bit words drawn so far.
    uint64_t position() const {
        return counter_;
    }

    uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, bound). Requires bound > 0.
    uint64_t below(uint64_t bound);

    /// UniformRandomBitGenerator surface, e.g. for std::shuffle.
    using result_type = uint64_t;
    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return ~uint64_t{0};
    }
    result_type operator()() {
        return next_u64();
    }

   private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t key_;
    uint64_t counter_ = 0;
};

uint64_t splitmix64_mix(uint64_t z);

}  // namespace neumit

#endif
