// Copyright 2026 The qacnek Authors
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

// Counter-based generator. Output k of stream (seed, stream) is
// mix(key + (k + 1) * golden) where key = mix(seed ^ mix(stream)). Any
// (seed, stream, k) triple can be evaluated independently, so per-trial streams
// make Monte Carlo results independent of thread scheduling.

#ifndef QACNEK_RNG_H
#define QACNEK_RNG_H

#include <cmath>
#include <cstdint>

namespace qacnek {

class Rng {
   public:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), key_(mix(seed ^ mix(stream + kGolden))) {}

    std::uint64_t seed() const { return seed_; }

    /// Independent child stream; children of different parents do not collide
    /// because the parent key feeds the child seed.
    Rng derive(std::uint64_t stream) const { return Rng(key_, stream); }

    std::uint64_t next_u64() {
        counter_++;
        return mix(key_ + counter_ * kGolden);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n) by rejection; n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    /// Standard normal (Box-Muller, one value per call).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

   private:
    std::uint64_t seed_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace qacnek

#endif
