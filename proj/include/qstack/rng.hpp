// Copyright 2026 The qstack developers
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

#pragma once

#include <cstdint>

namespace qstack {

/// Deterministic splitmix64 stream. Seeding is a plain 64-bit value; nearby
/// seeds (e.g. seed ^ shot_index) produce decorrelated streams, which is what
/// the per-shot substream scheme relies on.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be nonzero.
    uint64_t below(uint64_t bound) {
        return static_cast<uint64_t>(
            (static_cast<__uint128_t>(next_u64()) * bound) >> 64);
    }

private:
    uint64_t state_;
};

/// Derives a substream seed for task `index` of a run keyed by `seed`.
/// Used where a plain `seed ^ index` xor would collide across nested loops.
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
    Rng r(seed + 0x9E3779B97F4A7C15ull * (index + 1));
    return r.next_u64();
}

} // namespace qstack
