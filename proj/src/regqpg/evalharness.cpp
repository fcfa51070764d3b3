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
#include "regqpg/evalharness.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "regqpg/errors.hpp"
#include "regqpg/parallel.hpp"
#include "regqpg/trainer.hpp"

namespace regqpg {

MeanStd mean_std(std::span<const double> values) {
    if (values.empty()) {
        return {};
    }
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    const double n = static_cast<double>(values.size());
    const double mean = sum / n;
    double var = 0.0;
    for (const double v : values) {
        var += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(var / n)};
}

std::string_view to_string(Significance s) noexcept {
    switch (s) {
    case Significance::ConsiderablyBetter:
        return "considerably_better";
    case Significance::SlightlyBetter:
        return "slightly_better";
    case Significance::Neutral:
        return "neutral";
    case Significance::SlightlyWorse:
        return "slightly_worse";
    case Significance::ConsiderablyWorse:
        return "considerably_worse";
    }
    return "neutral";
}

Significance significance_label(MeanStd baseline, MeanStd candidate) {
    if (baseline.std < 0.0 || candidate.std < 0.0) {
        throw UsageError("standard deviations must be >= 0");
    }
    const auto disjoint_above = [](MeanStd hi, MeanStd lo, double f) {
        return hi.mean - f * hi.std > lo.mean + f * lo.std;
    };
    if (disjoint_above(candidate, baseline, 1.0)) {
        return Significance::ConsiderablyBetter;
    }
    if (disjoint_above(baseline, candidate, 1.0)) {
        return Significance::ConsiderablyWorse;
    }
    if (disjoint_above(candidate, baseline, 0.5)) {
        return Significance::SlightlyBetter;
    }
    if (disjoint_above(baseline, candidate, 0.5)) {
        return Significance::SlightlyWorse;
    }
    return Significance::Neutral;
}

double attraction_rate(std::span<const double> episode_rewards) {
    if (episode_rewards.empty()) {
        throw UsageError("attraction_rate needs at least one episode");
    }
    std::size_t hits = 0;
    for (const double r : episode_rewards) {
        hits += r == CartPoleConstants::horizon ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(episode_rewards.size());
}

std::vector<Interval> EvalGridSpec::default_angle_bins() {
    std::vector<Interval> bins;
    for (int k = 0; k < 11; ++k) {
        bins.push_back({-2.75 + 0.5 * k, -2.25 + 0.5 * k});
    }
    return bins;
}

std::vector<Interval> EvalGridSpec::default_velocity_bins() {
    std::vector<Interval> bins;
    for (int k = 0; k < 13; ++k) {
        bins.push_back({k / 50.0, (k + 1) / 50.0});
    }
    return bins;
}

std::vector<Interval> EvalGridSpec::effective_velocity_bins() const {
    std::vector<Interval> bins = velocity_bins;
    if (mirror_velocity) {
        for (const auto &b : velocity_bins) {
            bins.push_back({-b.hi, -b.lo});
        }
    }
    return bins;
}

void EvalGridSpec::validate() const {
    const auto check = [](const std::vector<Interval> &bins, const char *name) {
        if (bins.empty()) {
            throw ConfigError(std::string("eval.") + name + " must not be empty");
        }
        for (std::size_t i = 0; i < bins.size(); ++i) {
            if (!(bins[i].lo <= bins[i].hi)) {
                throw ConfigError(std::string("eval.") + name + " has a reversed bin");
            }
            if (i > 0 && bins[i].lo < bins[i - 1].hi) {
                throw ConfigError(std::string("eval.") + name + " bins overlap or are unordered");
            }
        }
    };
    check(angle_bins, "angle_bins");
    check(velocity_bins, "velocity_bins");
    for (const auto &b : angle_bins) {
        if (std::max(std::abs(b.lo), std::abs(b.hi)) * std::numbers::pi / 180.0 >
            CartPoleConstants::theta_limit) {
            throw ConfigError("eval.angle_bins exceed the admissible pole angle (degrees expected)");
        }
    }
    if (episodes_per_cell < 1) {
        throw ConfigError("eval.episodes_per_cell must be >= 1");
    }
}

RobustnessReport robustness_sweep(const AnsatzSpec &spec, std::span<const EvalModel> models,
                                  std::span<const double> sigmas, int episodes_per_point,
                                  std::uint64_t seed, const InitRanges &ranges,
                                  std::size_t workers) {
    if (models.empty()) {
        throw UsageError("robustness_sweep needs at least one model");
    }
    if (episodes_per_point < 1) {
        throw UsageError("robustness_sweep needs at least one episode per point");
    }
    for (const double s : sigmas) {
        if (!(s >= 0.0)) {
            throw ConfigError("noise levels must be >= 0");
        }
    }
    const std::size_t n_sig = sigmas.size();
    const auto n_ep = static_cast<std::size_t>(episodes_per_point);
    // rewards[model][sigma * n_ep + episode]
    std::vector<std::vector<double>> rewards(models.size(), std::vector<double>(n_sig * n_ep));
    parallel_for(models.size(), workers, [&](std::size_t m) {
        for (std::size_t s = 0; s < n_sig; ++s) {
            for (std::size_t e = 0; e < n_ep; ++e) {
                SplitMix64 rng(derive_seed(seed, {models[m].seed, s, e}));
                rewards[m][s * n_ep + e] =
                    episode_reward(spec, models[m].params, ranges, NoiseModel{sigmas[s]}, rng);
            }
        }
    });

    RobustnessReport report;
    for (std::size_t s = 0; s < n_sig; ++s) {
        RobustnessPoint p;
        p.sigma = sigmas[s];
        for (std::size_t m = 0; m < models.size(); ++m) {
            const std::span<const double> r(rewards[m].data() + s * n_ep, n_ep);
            p.per_model_mean.push_back(mean_std(r).mean);
        }
        p.aggregate = mean_std(p.per_model_mean);
        report.points.push_back(std::move(p));
    }
    for (std::size_t m = 0; m < models.size(); ++m) {
        for (std::size_t s = 0; s < n_sig; ++s) {
            for (std::size_t e = 0; e < n_ep; ++e) {
                report.episodes.push_back(
                    {models[m].seed, sigmas[s], static_cast<int>(e), rewards[m][s * n_ep + e]});
            }
        }
    }
    return report;
}

GeneralizationReport generalization_grid(const AnsatzSpec &spec, std::span<const EvalModel> models,
                                         const EvalGridSpec &grid, std::uint64_t seed,
                                         const InitRanges &base, std::size_t workers) {
    if (models.empty()) {
        throw UsageError("generalization_grid needs at least one model");
    }
    grid.validate();
    const auto vel_bins = grid.effective_velocity_bins();
    constexpr double deg = std::numbers::pi / 180.0;

    GeneralizationReport report;
    for (const auto &a : grid.angle_bins) {
        for (const auto &v : vel_bins) {
            report.cells.push_back({a, v, std::vector<double>(models.size()), {}});
        }
    }
    for (const auto &m : models) {
        report.model_seeds.push_back(m.seed);
    }

    parallel_for(models.size(), workers, [&](std::size_t m) {
        std::vector<double> rewards(static_cast<std::size_t>(grid.episodes_per_cell));
        for (std::size_t c = 0; c < report.cells.size(); ++c) {
            InitRanges ranges = base;
            ranges.theta = {report.cells[c].angle_deg.lo * deg, report.cells[c].angle_deg.hi * deg};
            ranges.theta_dot = report.cells[c].velocity;
            for (std::size_t e = 0; e < rewards.size(); ++e) {
                SplitMix64 rng(derive_seed(seed, {models[m].seed, c, e}));
                rewards[e] = episode_reward(spec, models[m].params, ranges, NoiseModel{}, rng);
            }
            report.cells[c].per_model_rate[m] = attraction_rate(rewards);
        }
    });
    for (auto &cell : report.cells) {
        cell.aggregate = mean_std(cell.per_model_rate);
    }
    return report;
}

std::vector<Significance> compare_grids(const GeneralizationReport &baseline,
                                        const GeneralizationReport &candidate) {
    if (baseline.cells.size() != candidate.cells.size()) {
        throw UsageError("generalization grids differ in size");
    }
    std::vector<Significance> labels;
    for (std::size_t c = 0; c < baseline.cells.size(); ++c) {
        const auto &b = baseline.cells[c];
        const auto &k = candidate.cells[c];
        if (b.angle_deg != k.angle_deg || b.velocity != k.velocity) {
            throw UsageError("generalization grids have different bins");
        }
        labels.push_back(significance_label(b.aggregate, k.aggregate));
    }
    return labels;
}

std::vector<std::vector<double>> range_attraction_rates(const AnsatzSpec &spec,
                                                        std::span<const PolicyParams> policies,
                                                        std::span<const InitRanges> ranges,
                                                        int episodes, std::uint64_t seed) {
    if (episodes < 1) {
        throw UsageError("range_attraction_rates needs at least one episode");
    }
    std::vector<std::vector<double>> out(policies.size(), std::vector<double>(ranges.size()));
    std::vector<double> rewards(static_cast<std::size_t>(episodes));
    for (std::size_t p = 0; p < policies.size(); ++p) {
        for (std::size_t r = 0; r < ranges.size(); ++r) {
            for (std::size_t e = 0; e < rewards.size(); ++e) {
                SplitMix64 rng(derive_seed(seed, {p, r, e}));
                rewards[e] = episode_reward(spec, policies[p], ranges[r], NoiseModel{}, rng);
            }
            out[p][r] = attraction_rate(rewards);
        }
    }
    return out;
}

} // namespace regqpg
