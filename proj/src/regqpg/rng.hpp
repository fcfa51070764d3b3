// Copyright 2026 The RegQPG Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file rng.hpp
 * Portable random streams. Every random draw in the library comes from a
 * SplitMix64 stream whose seed is derived from the master seed through
 * derive_seed(), so results are bit-reproducible across platforms.
 */
#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace regqpg {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

/**
 * @brief SplitMix64 generator (Steele, Lea & Flood). Satisfies
 * UniformRandomBitGenerator; the state is a plain counter.
 */
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_{seed} {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    [[nodiscard]] std::uint64_t state() const noexcept { return state_; }

  private:
    std::uint64_t state_;
};

/**
 * @brief Derive an independent stream seed from a base seed and a path of
 * indices, e.g. derive_seed(master, {seed_index}) or
 * derive_seed(run_seed, {epoch, episode}).
 */
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = mix64(base + 0x9e3779b97f4a7c15ULL);
    for (const auto p : path) {
        h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
    }
    return h;
}

/// Uniform draw from [lo, hi); returns lo when lo == hi.
double uniform(SplitMix64 &rng, double lo, double hi);

/// Gaussian draw with the given mean and standard deviation.
double gaussian(SplitMix64 &rng, double mean, double stddev);

} // namespace regqpg
