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
 * @file cartpole.hpp
 * Cart-pole balancing environment with explicit Euler integration,
 * observation normalization and additive Gaussian observation noise.
 */
#pragma once

#include <array>

#include "regqpg/rng.hpp"

namespace regqpg {

using Observation = std::array<double, 4>;

struct CartPoleConstants {
    static constexpr double gravity = 9.8;          // m/s^2
    static constexpr double cart_mass = 1.0;        // kg
    static constexpr double pole_mass = 0.1;        // kg
    static constexpr double half_pole_length = 0.5; // m
    static constexpr double force = 10.0;           // N
    static constexpr double dt = 0.02;              // s
    static constexpr double x_limit = 2.4;          // m
    static constexpr double theta_limit = 0.2095;   // rad, ~12 degrees
    static constexpr int horizon = 200;
};

/// Fixed per-feature scale factors mapping typical values to ~[-1, 1].
inline constexpr Observation kNormalizationScale{2.4, 2.5, 0.21, 2.5};

struct EnvState {
    double x{};
    double x_dot{};
    double theta{};
    double theta_dot{};
    int step_count{0};
    bool terminated{false};

    bool operator==(const EnvState &) const = default;
};

struct Interval {
    double lo{};
    double hi{};

    [[nodiscard]] bool contains(const Interval &o) const noexcept { return lo <= o.lo && o.hi <= hi; }
    bool operator==(const Interval &) const = default;
};

/// Intervals for the initial state, in raw units (m, m/s, rad, rad/s).
struct InitRanges {
    Interval x{-0.05, 0.05};
    Interval x_dot{-0.05, 0.05};
    Interval theta{-0.05, 0.05};
    Interval theta_dot{-0.05, 0.05};

    /// Throws ConfigError for reversed intervals or bounded features outside
    /// their admissible range.
    void validate() const;
    /// True if every interval of `inner` lies inside the matching one here.
    [[nodiscard]] bool contains(const InitRanges &inner) const noexcept;

    bool operator==(const InitRanges &) const = default;
};

struct NoiseModel {
    double sigma{0.0};
};

struct StepResult {
    EnvState state;
    double reward{};
};

[[nodiscard]] EnvState reset(const InitRanges &ranges, SplitMix64 &rng);

/// Advances one time step. Throws UsageError on a terminated state.
[[nodiscard]] StepResult step(const EnvState &state, int action);

[[nodiscard]] Observation normalize(const EnvState &state);

/// normalize(state) plus i.i.d. N(0, sigma^2) per feature. The state itself
/// is never modified.
[[nodiscard]] Observation observe(const EnvState &state, const NoiseModel &noise, SplitMix64 &rng);

} // namespace regqpg
