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
#include "regqpg/cartpole.hpp"

#include <cmath>
#include <string>

#include "regqpg/errors.hpp"

namespace regqpg {

namespace {

void check_interval(const Interval &iv, const char *name, double admissible) {
    if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
        throw ConfigError(std::string("initial range for ") + name + " is not a valid interval");
    }
    if (admissible > 0.0 && (iv.lo < -admissible || iv.hi > admissible)) {
        throw ConfigError(std::string("initial range for ") + name + " exceeds the admissible range");
    }
}

} // namespace

void InitRanges::validate() const {
    check_interval(x, "x", CartPoleConstants::x_limit);
    check_interval(x_dot, "x_dot", 0.0);
    check_interval(theta, "theta", CartPoleConstants::theta_limit);
    check_interval(theta_dot, "theta_dot", 0.0);
}

bool InitRanges::contains(const InitRanges &inner) const noexcept {
    return x.contains(inner.x) && x_dot.contains(inner.x_dot) && theta.contains(inner.theta) &&
           theta_dot.contains(inner.theta_dot);
}

EnvState reset(const InitRanges &ranges, SplitMix64 &rng) {
    EnvState s;
    s.x = uniform(rng, ranges.x.lo, ranges.x.hi);
    s.x_dot = uniform(rng, ranges.x_dot.lo, ranges.x_dot.hi);
    s.theta = uniform(rng, ranges.theta.lo, ranges.theta.hi);
    s.theta_dot = uniform(rng, ranges.theta_dot.lo, ranges.theta_dot.hi);
    return s;
}

StepResult step(const EnvState &state, int action) {
    using C = CartPoleConstants;
    if (state.terminated) {
        throw UsageError("step() called on a terminated episode");
    }
    if (action != 0 && action != 1) {
        throw UsageError("cart-pole action must be 0 or 1");
    }
    constexpr double total_mass = C::cart_mass + C::pole_mass;
    constexpr double pole_mass_length = C::pole_mass * C::half_pole_length;

    const double force = action == 1 ? C::force : -C::force;
    const double cos_t = std::cos(state.theta);
    const double sin_t = std::sin(state.theta);
    const double temp =
        (force + pole_mass_length * state.theta_dot * state.theta_dot * sin_t) / total_mass;
    const double theta_acc =
        (C::gravity * sin_t - cos_t * temp) /
        (C::half_pole_length * (4.0 / 3.0 - C::pole_mass * cos_t * cos_t / total_mass));
    const double x_acc = temp - pole_mass_length * theta_acc * cos_t / total_mass;

    EnvState next;
    next.x = state.x + C::dt * state.x_dot;
    next.x_dot = state.x_dot + C::dt * x_acc;
    next.theta = state.theta + C::dt * state.theta_dot;
    next.theta_dot = state.theta_dot + C::dt * theta_acc;
    next.step_count = state.step_count + 1;
    next.terminated = std::abs(next.x) > C::x_limit || std::abs(next.theta) > C::theta_limit ||
                      next.step_count >= C::horizon;
    return {next, 1.0};
}

Observation normalize(const EnvState &state) {
    return {state.x / kNormalizationScale[0], state.x_dot / kNormalizationScale[1],
            state.theta / kNormalizationScale[2], state.theta_dot / kNormalizationScale[3]};
}

Observation observe(const EnvState &state, const NoiseModel &noise, SplitMix64 &rng) {
    if (!(noise.sigma >= 0.0)) {
        throw ConfigError("noise sigma must be >= 0");
    }
    Observation obs = normalize(state);
    if (noise.sigma > 0.0) {
        for (double &v : obs) {
            v += gaussian(rng, 0.0, noise.sigma);
        }
    }
    return obs;
}

} // namespace regqpg
