// Copyright 2026 The MDI-QCT Simulator Authors
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
#include <limits>

namespace mdiqct {

/// SplitMix64 generator. Cheap to seed, so every Monte Carlo trial can own
/// fresh generators derived from (master seed, trial index, stream) without
/// sharing state across workers. Satisfies UniformRandomBitGenerator.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    int bit() noexcept { return static_cast<int>((*this)() >> 63); }

    bool bernoulli(double p) noexcept { return uniform() < p; }

   private:
    std::uint64_t state_;
};

/// Mixes (master, index, stream) into a 64-bit seed. Pure function of its
/// inputs, so results never depend on how trials are split across workers.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t stream) noexcept {
    Rng mix(master ^ (stream * 0xD1B54A32D192ED03ULL));
    std::uint64_t a = mix();
    Rng second(a ^ (index * 0xA0761D6478BD642FULL));
    second();
    return second();
}

/// Independent generator streams for one protocol run. Honest-party choices
/// (labels, b') never share a stream with device noise or the adversary.
struct TrialStreams {
    Rng alice;
    Rng bob;
    Rng device;
    Rng adversary;

    static constexpr TrialStreams derive(std::uint64_t seed, std::uint64_t index) noexcept {
        return TrialStreams{Rng(derive_seed(seed, index, 1)), Rng(derive_seed(seed, index, 2)),
                            Rng(derive_seed(seed, index, 3)), Rng(derive_seed(seed, index, 4))};
    }
};

}  // namespace mdiqct
