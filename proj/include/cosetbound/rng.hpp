/*
   Copyright 2026 The cosetbound authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef COSETBOUND_RNG_HPP
#define COSETBOUND_RNG_HPP

#include <cstdint>

namespace cosetbound {

/// SplitMix64 finalizer; full-period bijective mixer.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Small deterministic generator. Streams derived from (seed, counter) are
/// independent of evaluation order, which keeps parallel sweeps reproducible.
class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    /// Stream for work item `counter` of a run seeded with `seed`.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t counter) noexcept {
        return SplitMix64(mix64(seed ^ mix64(counter + 0x2545f4914f6cdd1dULL)));
    }

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n). n = 0 returns 0.
    std::uint64_t below(std::uint64_t n) noexcept {
        if (n == 0) return 0;
        // Rejection sampling; bias-free.
        std::uint64_t limit = (~std::uint64_t(0)) - ((~std::uint64_t(0)) % n) - 1;
        std::uint64_t v = next();
        while (v > limit) v = next();
        return v % n;
    }

    /// Uniform value in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) noexcept { return lo + below(hi - lo + 1); }

   private:
    std::uint64_t state_;
};

}  // namespace cosetbound

#endif  // COSETBOUND_RNG_HPP
