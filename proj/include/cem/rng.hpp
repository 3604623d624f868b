// Copyright 2026 The circular-ensembles Authors.

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <limits>

namespace cem {

/**
 * SplitMix64: a counter-advanced 64-bit generator. The state is a Weyl
 * sequence (state += 0x9E3779B97F4A7C15 per draw) and every output is the
 * finalizer applied to the new state, so the k-th output of a stream depends
 * only on (seed, k).
 *
 * Satisfies std::uniform_random_bit_generator.
 */
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr std::uint64_t finalize(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31U);
    }

    constexpr result_type operator()() noexcept {
        state_ += kGamma;
        return finalize(state_);
    }

    /// Uniform double on [0, 1) built from the top 53 bits of one draw.
    constexpr double uniform() noexcept {
        return static_cast<double>((*this)() >> 11U) * 0x1.0p-53;
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    [[nodiscard]] constexpr std::uint64_t state() const noexcept {
        return state_;
    }

  private:
    std::uint64_t state_;
};

/**
 * Per-realization substream seed:
 *   mix(seed, r) = finalize(seed + (r + 1) * gamma)
 * i.e. the r-th output of a SplitMix64 stream started at `seed`. Distinct
 * realization indices give decorrelated substreams.
 */
constexpr std::uint64_t mix_seed(std::uint64_t seed,
                                 std::uint64_t index) noexcept {
    return SplitMix64::finalize(seed + (index + 1) * SplitMix64::kGamma);
}

} // namespace cem
