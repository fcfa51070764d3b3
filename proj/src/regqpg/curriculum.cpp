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
#include "regqpg/curriculum.hpp"

#include <limits>
#include <string>

#include "regqpg/errors.hpp"

namespace regqpg {

namespace {

constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kEpisodeStream = 1;
constexpr std::uint64_t kValidationStream = 2;

} // namespace

std::vector<InitRanges> CurriculumSchedule::default_ranges() {
    std::vector<InitRanges> out;
    for (const double w : {0.25, 0.75, 1.25, 1.75}) {
        InitRanges r;
        r.theta_dot = {-w, w};
        out.push_back(r);
    }
    return out;
}

void CurriculumSchedule::validate() const {
    if (ranges.empty()) {
        throw ConfigError("curriculum needs at least one range");
    }
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        ranges[i].validate();
        if (i > 0 && (!ranges[i].contains(ranges[i - 1]) || ranges[i] == ranges[i - 1])) {
            throw ConfigError("curriculum range " + std::to_string(i) +
                              " does not strictly contain its predecessor");
        }
    }
    if (f_max < 0) {
        throw ConfigError("curriculum.f_max must be >= 0");
    }
    if (validation_episodes < 1) {
        throw ConfigError("curriculum.validation_episodes must be >= 1");
    }
    if (validation_period < 1) {
        throw ConfigError("curriculum.validation_period must be >= 1");
    }
    if (max_episodes < 1) {
        throw ConfigError("curriculum.max_episodes must be >= 1");
    }
}

ValidationResult validate(const AnsatzSpec &spec, const PolicyParams &params,
                          const InitRanges &range, int n_episodes, double threshold,
                          std::uint64_t seed) {
    if (n_episodes < 1) {
        throw UsageError("validation needs at least one episode");
    }
    ValidationResult res;
    double sum = 0.0;
    for (int e = 0; e < n_episodes; ++e) {
        SplitMix64 rng(derive_seed(seed, {static_cast<std::uint64_t>(e)}));
        const double r = episode_reward(spec, params, range, NoiseModel{}, rng);
        sum += r;
        res.failures += r < CartPoleConstants::horizon ? 1 : 0;
    }
    res.mean_reward = sum / n_episodes;
    res.passed = res.mean_reward > threshold;
    return res;
}

CurriculumResult run_curriculum(const TrainConfig &config, const AnsatzSpec &spec,
                                const CurriculumSchedule &schedule,
                                std::optional<PolicyParams> initial) {
    config.validate();
    spec.validate();
    schedule.validate();

    CurriculumResult result;
    if (initial) {
        initial->validate(spec);
        result.final_params = std::move(*initial);
    } else {
        SplitMix64 init_rng(derive_seed(config.seed, {kInitStream}));
        result.final_params = initialize_params(spec, init_rng);
    }
    PolicyParams &params = result.final_params;

    RangeOutcome first;
    first.validation_mean = std::numeric_limits<double>::quiet_NaN();
    result.ranges.push_back(first);
    if (schedule.f_max == 0) {
        return result;
    }

    OptimizerState opt;
    std::size_t range_idx = 0;
    int since_validation = 0;
    std::uint64_t validation_count = 0;
    std::vector<Trajectory> batch;
    batch.reserve(static_cast<std::size_t>(config.batch_size));

    while (result.total_failures < schedule.f_max && result.total_episodes < schedule.max_episodes) {
        batch.clear();
        for (int b = 0; b < config.batch_size; ++b) {
            SplitMix64 rng(derive_seed(
                config.seed, {kEpisodeStream, static_cast<std::uint64_t>(result.total_episodes)}));
            batch.push_back(collect_episode(spec, params, schedule.ranges[range_idx], NoiseModel{},
                                            rng, true));
            ++result.total_episodes;
            ++result.ranges[range_idx].episodes;
            ++since_validation;
            if (batch.back().failed) {
                ++result.total_failures;
                ++result.ranges[range_idx].failures;
            }
            if (result.total_failures >= schedule.f_max ||
                result.total_episodes >= schedule.max_episodes) {
                break;
            }
        }
        if (result.total_failures >= schedule.f_max) {
            break;
        }

        if (since_validation >= schedule.validation_period) {
            since_validation = 0;
            const auto v = validate(spec, params, schedule.ranges[range_idx],
                                    schedule.validation_episodes, schedule.validation_threshold,
                                    derive_seed(config.seed, {kValidationStream, validation_count++}));
            RangeOutcome &cur = result.ranges[range_idx];
            ++cur.validations;
            cur.validation_failures += v.failures;
            cur.validation_mean = v.mean_reward;
            if (v.passed) {
                cur.passed = true;
                cur.snapshot = params;
                if (range_idx + 1 == schedule.ranges.size()) {
                    result.converged = true;
                    break;
                }
                ++range_idx;
                RangeOutcome next;
                next.validation_mean = std::numeric_limits<double>::quiet_NaN();
                result.ranges.push_back(next);
            }
        }

        const auto grad = batch_gradient(spec, batch, config.gamma, config.baseline,
                                         config.return_scaling, config.per_step_mean);
        params = apply_update(params, grad, config, opt);
    }
    return result;
}

} // namespace regqpg
