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
 * @file trainer.hpp
 * Regularized REINFORCE training of the quantum policy: episode rollouts,
 * discounted reward-to-go, the batch gradient estimator and the parameter
 * update with the encoding-weight penalty.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "regqpg/cartpole.hpp"
#include "regqpg/policy.hpp"
#include "regqpg/rng.hpp"

namespace regqpg {

/// How the batch estimator scales the per-step score terms.
enum class ReturnScaling {
    Raw,         ///< G_t as is, summed per episode, averaged over episodes
    Standardize, ///< (G_t - mean) / std over all steps of the batch
};

enum class Optimizer {
    VanillaAscent,  ///< θ ← θ + α ∇J_reg
    AdaptiveMoment, ///< Adam-style ascent on ∇J_reg
};

struct TrainConfig {
    int epochs{100};
    int batch_size{10};
    double learning_rate{0.05};
    double gamma{0.99};
    double lambda{0.0};
    Optimizer optimizer{Optimizer::AdaptiveMoment};
    /// Subtract the per-time-step batch mean of the returns.
    bool baseline{true};
    /// Standardize the (baselined) returns over all steps of the batch.
    ReturnScaling return_scaling{ReturnScaling::Standardize};
    /// Divide the estimate by the mean episode length instead of 1.
    bool per_step_mean{false};
    std::uint64_t seed{0};

    static constexpr double beta1 = 0.9;
    static constexpr double beta2 = 0.999;
    static constexpr double epsilon = 1e-8;

    /// Throws ConfigError.
    void validate() const;
    bool operator==(const TrainConfig &) const = default;
};

struct TrajectoryStep {
    Observation obs{};
    int action{};
    double reward{};
    /// ∇ log π(action|obs); empty tensors when gradients were not requested.
    PolicyGradient grad_log_prob;
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;
    double total_reward{0.0};
    /// Terminated before reaching the horizon.
    bool failed{false};
};

struct TrainRecord {
    int epoch{};
    double mean_reward{};
    /// Batch mean of the discounted return from t = 0, minus the penalty.
    double reg_objective{};
    /// Lipschitz bound of the parameters after this epoch's update.
    double lipschitz_total{};

    bool operator==(const TrainRecord &) const = default;
};

struct OptimizerState {
    PolicyGradient first_moment;
    PolicyGradient second_moment;
    long steps{0};
};

struct TrainResult {
    PolicyParams params;
    std::vector<TrainRecord> records;
};

/// G_t = Σ_{t' >= t} γ^{t'-t} r_{t'} by a backward pass.
[[nodiscard]] std::vector<double> discounted_returns(std::span<const double> rewards, double gamma);

/// Samples action 0 with probability probs[0].
[[nodiscard]] int sample_action(const PolicyOutput &out, SplitMix64 &rng);

/**
 * @brief Runs one episode from an initial state drawn from `ranges`.
 *
 * With `with_gradients` every step stores ∇ log π(a_t|s_t).
 */
[[nodiscard]] Trajectory collect_episode(const AnsatzSpec &spec, const PolicyParams &params,
                                         const InitRanges &ranges, const NoiseModel &noise,
                                         SplitMix64 &rng, bool with_gradients);

/// Total reward of one episode without storing steps.
[[nodiscard]] double episode_reward(const AnsatzSpec &spec, const PolicyParams &params,
                                    const InitRanges &ranges, const NoiseModel &noise,
                                    SplitMix64 &rng);

/**
 * @brief REINFORCE estimate (1/|B|) Σ_episodes Σ_t G_t ∇ log π(a_t|s_t).
 *
 * Throws UsageError on an empty batch.
 */
[[nodiscard]] PolicyGradient batch_gradient(const AnsatzSpec &spec,
                                            std::span<const Trajectory> batch, double gamma,
                                            bool baseline = false,
                                            ReturnScaling scaling = ReturnScaling::Raw,
                                            bool per_step_mean = false);

/**
 * @brief One ascent step on J_reg = J - λ Σ ω² ‖H‖². `task_grad` is ∇J; the
 * penalty term is added here and only touches omega.
 */
[[nodiscard]] PolicyParams apply_update(const PolicyParams &params, const PolicyGradient &task_grad,
                                        const TrainConfig &config, OptimizerState &state);

/// ν ~ U[-π, π], ω ~ N(0, 0.1²).
[[nodiscard]] PolicyParams initialize_params(const AnsatzSpec &spec, SplitMix64 &rng);

[[nodiscard]] TrainResult train(const TrainConfig &config, const AnsatzSpec &spec,
                                const InitRanges &ranges);

/// Mean of the last `window` epoch rewards (all epochs if fewer).
[[nodiscard]] double final_mean_reward(std::span<const TrainRecord> records, std::size_t window = 10);

} // namespace regqpg
