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
 * @file curriculum.hpp
 * Curriculum training over an expanding sequence of initial-condition
 * ranges, counting failed training episodes against a budget and
 * snapshotting the policy each time a range is validated.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regqpg/cartpole.hpp"
#include "regqpg/policy.hpp"
#include "regqpg/trainer.hpp"

namespace regqpg {

struct CurriculumSchedule {
    std::vector<InitRanges> ranges{default_ranges()};
    int f_max{1000};
    int validation_episodes{100};
    double validation_threshold{195.0};
    /// Training episodes between validation attempts (checked after each batch).
    int validation_period{10};
    /// Hard stop on training episodes, in case a run neither fails nor validates.
    long max_episodes{200000};

    /// theta_dot in ±0.25, ±0.75, ±1.25, ±1.75 rad/s, other features default.
    static std::vector<InitRanges> default_ranges();

    /// Throws ConfigError.
    void validate() const;
    bool operator==(const CurriculumSchedule &) const = default;
};

struct RangeOutcome {
    int failures{0};
    long episodes{0};
    bool passed{false};
    int validations{0};
    /// Failed episodes inside validation runs; never counted as failures.
    long validation_failures{0};
    /// Mean reward of the latest validation on this range (NaN if none ran).
    double validation_mean{0.0};
    std::optional<PolicyParams> snapshot;
};

struct CurriculumResult {
    /// One entry per range that was reached.
    std::vector<RangeOutcome> ranges;
    int total_failures{0};
    long total_episodes{0};
    bool converged{false};
    PolicyParams final_params;
};

struct ValidationResult {
    double mean_reward{};
    bool passed{false};
    long failures{0};
};

/**
 * @brief Runs n_episodes noise-free episodes from `range`; passes iff the
 * mean total reward strictly exceeds `threshold`.
 */
[[nodiscard]] ValidationResult validate(const AnsatzSpec &spec, const PolicyParams &params,
                                        const InitRanges &range, int n_episodes, double threshold,
                                        std::uint64_t seed);

/**
 * @brief Curriculum training. Starts from `initial` if given, otherwise from
 * the standard random initialization derived from config.seed.
 */
[[nodiscard]] CurriculumResult run_curriculum(const TrainConfig &config, const AnsatzSpec &spec,
                                              const CurriculumSchedule &schedule,
                                              std::optional<PolicyParams> initial = std::nullopt);

} // namespace regqpg
