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
#include "regqpg/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "regqpg/errors.hpp"

namespace regqpg {

namespace {

// Stream tags under a run seed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kEpisodeStream = 1;

void axpy(ParamTensor &y, double a, const ParamTensor &x) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += a * x[i];
    }
}

void adam_step(ParamTensor &theta, const ParamTensor &g, ParamTensor &m, ParamTensor &v,
               double lr, long t) {
    using C = TrainConfig;
    const double bc1 = 1.0 - std::pow(C::beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(C::beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < theta.size(); ++i) {
        m[i] = C::beta1 * m[i] + (1.0 - C::beta1) * g[i];
        v[i] = C::beta2 * v[i] + (1.0 - C::beta2) * g[i] * g[i];
        const double m_hat = m[i] / bc1;
        const double v_hat = v[i] / bc2;
        theta[i] += lr * m_hat / (std::sqrt(v_hat) + C::epsilon);
    }
}

} // namespace

void TrainConfig::validate() const {
    if (epochs < 0) {
        throw ConfigError("train.epochs must be >= 0");
    }
    if (batch_size < 1) {
        throw ConfigError("train.batch_size must be >= 1");
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("train.learning_rate must be > 0");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ConfigError("train.gamma must lie in [0, 1]");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ConfigError("train.lambda must be >= 0");
    }
}

std::vector<double> discounted_returns(std::span<const double> rewards, double gamma) {
    std::vector<double> g(rewards.size());
    double acc = 0.0;
    for (std::size_t t = rewards.size(); t-- > 0;) {
        acc = rewards[t] + gamma * acc;
        g[t] = acc;
    }
    return g;
}

int sample_action(const PolicyOutput &out, SplitMix64 &rng) {
    return uniform(rng, 0.0, 1.0) < out.probs[0] ? 0 : 1;
}

Trajectory collect_episode(const AnsatzSpec &spec, const PolicyParams &params,
                           const InitRanges &ranges, const NoiseModel &noise, SplitMix64 &rng,
                           bool with_gradients) {
    Trajectory traj;
    traj.steps.reserve(CartPoleConstants::horizon);
    EnvState state = reset(ranges, rng);
    while (!state.terminated) {
        TrajectoryStep rec;
        rec.obs = observe(state, noise, rng);
        if (with_gradients) {
            const auto eval = evaluate_with_gradient(spec, params, rec.obs);
            rec.action = sample_action(eval.output, rng);
            rec.grad_log_prob = log_policy_gradient(eval, rec.action);
        } else {
            rec.action = sample_action(policy_probs(spec, params, rec.obs), rng);
        }
        const auto next = step(state, rec.action);
        state = next.state;
        rec.reward = next.reward;
        traj.total_reward += next.reward;
        traj.steps.push_back(std::move(rec));
    }
    traj.failed = state.step_count < CartPoleConstants::horizon;
    return traj;
}

double episode_reward(const AnsatzSpec &spec, const PolicyParams &params, const InitRanges &ranges,
                      const NoiseModel &noise, SplitMix64 &rng) {
    EnvState state = reset(ranges, rng);
    double total = 0.0;
    while (!state.terminated) {
        const auto obs = observe(state, noise, rng);
        const int action = sample_action(policy_probs(spec, params, obs), rng);
        const auto next = step(state, action);
        state = next.state;
        total += next.reward;
    }
    return total;
}

PolicyGradient batch_gradient(const AnsatzSpec &spec, std::span<const Trajectory> batch,
                              double gamma, bool baseline, ReturnScaling scaling,
                              bool per_step_mean) {
    if (batch.empty()) {
        throw UsageError("batch_gradient called with an empty batch");
    }
    std::vector<std::vector<double>> returns;
    returns.reserve(batch.size());
    std::size_t longest = 0;
    for (const auto &traj : batch) {
        std::vector<double> rewards;
        rewards.reserve(traj.steps.size());
        for (const auto &s : traj.steps) {
            rewards.push_back(s.reward);
        }
        returns.push_back(discounted_returns(rewards, gamma));
        longest = std::max(longest, traj.steps.size());
    }

    std::vector<double> mean_return(longest, 0.0);
    if (baseline) {
        std::vector<double> count(longest, 0.0);
        for (const auto &g : returns) {
            for (std::size_t t = 0; t < g.size(); ++t) {
                mean_return[t] += g[t];
                count[t] += 1.0;
            }
        }
        for (std::size_t t = 0; t < longest; ++t) {
            mean_return[t] /= count[t];
        }
    }

    double shift = 0.0;
    double scale = 1.0;
    std::size_t total_steps = 0;
    for (const auto &g : returns) {
        total_steps += g.size();
    }
    if (scaling == ReturnScaling::Standardize && total_steps > 0) {
        double sum = 0.0;
        for (std::size_t e = 0; e < returns.size(); ++e) {
            for (std::size_t t = 0; t < returns[e].size(); ++t) {
                sum += returns[e][t] - mean_return[t];
            }
        }
        shift = sum / static_cast<double>(total_steps);
        double var = 0.0;
        for (std::size_t e = 0; e < returns.size(); ++e) {
            for (std::size_t t = 0; t < returns[e].size(); ++t) {
                const double d = returns[e][t] - mean_return[t] - shift;
                var += d * d;
            }
        }
        scale = 1.0 / (std::sqrt(var / static_cast<double>(total_steps)) + 1e-8);
    }

    PolicyGradient grad = PolicyParams::zeros(spec);
    for (std::size_t e = 0; e < batch.size(); ++e) {
        const auto &steps = batch[e].steps;
        for (std::size_t t = 0; t < steps.size(); ++t) {
            const auto &glp = steps[t].grad_log_prob;
            if (!glp.nu.same_shape(grad.nu) || !glp.omega.same_shape(grad.omega)) {
                throw UsageError("trajectory step is missing log-policy gradients");
            }
            const double weight = (returns[e][t] - mean_return[t] - shift) * scale;
            axpy(grad.nu, weight, glp.nu);
            axpy(grad.omega, weight, glp.omega);
        }
    }
    double inv = 1.0 / static_cast<double>(batch.size());
    if (per_step_mean && total_steps > 0) {
        inv = 1.0 / static_cast<double>(total_steps);
    }
    for (auto *t : {&grad.nu, &grad.omega}) {
        for (double &v : t->values()) {
            v *= inv;
        }
    }
    return grad;
}

PolicyParams apply_update(const PolicyParams &params, const PolicyGradient &task_grad,
                          const TrainConfig &config, OptimizerState &state) {
    if (!task_grad.nu.same_shape(params.nu) || !task_grad.omega.same_shape(params.omega)) {
        throw ConfigError("gradient shape does not match parameter shape");
    }
    // ∇_ω J_reg = ∇_ω J - 2λ‖H‖²ω ; ν is untouched by the penalty.
    PolicyGradient total = task_grad;
    axpy(total.omega, -1.0, regularization_gradient(params, config.lambda));

    PolicyParams next = params;
    if (config.optimizer == Optimizer::VanillaAscent) {
        axpy(next.nu, config.learning_rate, total.nu);
        axpy(next.omega, config.learning_rate, total.omega);
        return next;
    }
    if (state.steps == 0) {
        state.first_moment = PolicyGradient{ParamTensor(params.nu.layers(), params.nu.qubits()),
                                            ParamTensor(params.omega.layers(), params.omega.qubits())};
        state.second_moment = state.first_moment;
    }
    ++state.steps;
    adam_step(next.nu, total.nu, state.first_moment.nu, state.second_moment.nu,
              config.learning_rate, state.steps);
    adam_step(next.omega, total.omega, state.first_moment.omega, state.second_moment.omega,
              config.learning_rate, state.steps);
    return next;
}

PolicyParams initialize_params(const AnsatzSpec &spec, SplitMix64 &rng) {
    PolicyParams p = PolicyParams::zeros(spec);
    for (double &v : p.nu.values()) {
        v = uniform(rng, -std::numbers::pi, std::numbers::pi);
    }
    for (double &v : p.omega.values()) {
        v = gaussian(rng, 0.0, 0.1);
    }
    return p;
}

TrainResult train(const TrainConfig &config, const AnsatzSpec &spec, const InitRanges &ranges) {
    config.validate();
    spec.validate();
    ranges.validate();

    SplitMix64 init_rng(derive_seed(config.seed, {kInitStream}));
    TrainResult result{initialize_params(spec, init_rng), {}};
    result.records.reserve(static_cast<std::size_t>(config.epochs));
    OptimizerState opt;

    std::vector<Trajectory> batch(static_cast<std::size_t>(config.batch_size));
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double reward_sum = 0.0;
        double return_sum = 0.0;
        for (int e = 0; e < config.batch_size; ++e) {
            SplitMix64 rng(derive_seed(config.seed, {kEpisodeStream, static_cast<std::uint64_t>(epoch),
                                                     static_cast<std::uint64_t>(e)}));
            auto &traj = batch[static_cast<std::size_t>(e)];
            traj = collect_episode(spec, result.params, ranges, NoiseModel{}, rng, true);
            reward_sum += traj.total_reward;
            std::vector<double> rewards;
            for (const auto &s : traj.steps) {
                rewards.push_back(s.reward);
            }
            const auto g = discounted_returns(rewards, config.gamma);
            return_sum += g.empty() ? 0.0 : g.front();
        }
        const double n = static_cast<double>(config.batch_size);
        TrainRecord rec;
        rec.epoch = epoch;
        rec.mean_reward = reward_sum / n;
        rec.reg_objective = return_sum / n - regularization_penalty(result.params, config.lambda);

        const auto grad = batch_gradient(spec, batch, config.gamma, config.baseline,
                                         config.return_scaling, config.per_step_mean);
        result.params = apply_update(result.params, grad, config, opt);

        rec.lipschitz_total = lipschitz_bound(spec, result.params).total;
        result.records.push_back(rec);
    }
    return result;
}

double final_mean_reward(std::span<const TrainRecord> records, std::size_t window) {
    if (records.empty()) {
        return 0.0;
    }
    const std::size_t n = std::min(window, records.size());
    double acc = 0.0;
    for (std::size_t i = records.size() - n; i < records.size(); ++i) {
        acc += records[i].mean_reward;
    }
    return acc / static_cast<double>(n);
}

} // namespace regqpg
