// This file is part of the bgs project, a texture-based background
// subtraction library.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace bgs {

/// PCG32 generator (pcg32_random_r from the PCG reference implementation,
/// O'Neill 2014): 64-bit LCG state with an xorshift-rotate output permutation.
/// Chosen over std::mt19937 because the engine's streams must be serialized
/// into model snapshots and reproduce bit-identically across platforms and
/// standard-library versions; the entire generator state is two u64 values.
///
/// Distinct `stream` values select statistically independent sequences for
/// the same seed, which the scene generator uses to give every frame its own
/// substream (frames can then be rendered in any order, or re-rendered
/// individually, without replaying the whole sequence).
class Pcg32 {
public:
    Pcg32() { reseed(0x853c49e6748fea9bULL, 0xda3e39cb94b95bdbULL); }
    Pcg32(std::uint64_t seed, std::uint64_t stream = 0) { reseed(seed, stream); }

    /// Standard PCG32 initialization: the stream id is folded into the
    /// increment (odd by construction), then the seed is absorbed between
    /// two steps so that nearby seeds diverge immediately.
    void reseed(std::uint64_t seed, std::uint64_t stream = 0) {
        state_ = 0u;
        inc_ = (stream << 1u) | 1u;
        next();
        state_ += seed;
        next();
    }

    /// Next 32 uniform bits.
    std::uint32_t next() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    /// Uniform integer in [0, n). Rejection sampling over the low-end
    /// remainder zone (threshold = 2^32 mod n) keeps the result exactly
    /// uniform; the loop rejects less than one draw in two on average.
    /// n must be nonzero.
    std::uint32_t bounded(std::uint32_t n) {
        std::uint32_t threshold = (0u - n) % n;
        for (;;) {
            std::uint32_t r = next();
            if (r >= threshold)
                return r % n;
        }
    }

    /// Uniform double in [0, 1) with 32 bits of resolution.
    double uniform() { return next() * (1.0 / 4294967296.0); }

    /// Raw state accessors for snapshot serialization. `restore` bypasses
    /// reseed scrambling and must only receive values produced by `state`
    /// and `increment`.
    std::uint64_t state() const { return state_; }
    std::uint64_t increment() const { return inc_; }
    void restore(std::uint64_t state, std::uint64_t inc) {
        state_ = state;
        inc_ = inc;
    }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

} // namespace bgs
