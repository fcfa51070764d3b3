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
 * @file evalharness.hpp
 * Post-training evaluation campaigns: reward under observation noise,
 * attraction rates over a grid of initial pole conditions, and the
 * standard-deviation overlap rule used to label differences between
 * model families.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "regqpg/cartpole.hpp"
#include "regqpg/policy.hpp"

namespace regqpg {

struct MeanStd {
    double mean{};
    /// Population standard deviation.
    double std{};
};

[[nodiscard]] MeanStd mean_std(std::span<const double> values);

enum class Significance {
    ConsiderablyBetter,
    SlightlyBetter,
    Neutral,
    SlightlyWorse,
    ConsiderablyWorse,
};

[[nodiscard]] std::string_view to_string(Significance s) noexcept;

/**
 * @brief Considerably better/worse if the mean ± std intervals are disjoint,
 * slightly better/worse if only the mean ± std/2 intervals are.
 */
[[nodiscard]] Significance significance_label(MeanStd baseline, MeanStd candidate);

/// Fraction of episodes that reached the full horizon reward.
[[nodiscard]] double attraction_rate(std::span<const double> episode_rewards);

/// A trained policy and the seed it was trained with.
struct EvalModel {
    std::uint64_t seed{};
    PolicyParams params;
};

struct EvalGridSpec {
    /// Pole angle bins in degrees.
    std::vector<Interval> angle_bins{default_angle_bins()};
    /// Pole angular velocity bins in rad/s.
    std::vector<Interval> velocity_bins{default_velocity_bins()};
    int episodes_per_cell{100};
    /// Also evaluate the mirrored bins [-hi, -lo] of every velocity bin.
    bool mirror_velocity{false};

    static std::vector<Interval> default_angle_bins();
    static std::vector<Interval> default_velocity_bins();
    /// velocity_bins, followed by their mirror images when enabled.
    [[nodiscard]] std::vector<Interval> effective_velocity_bins() const;

    /// Throws ConfigError.
    void validate() const;
    bool operator==(const EvalGridSpec &) const = default;
};

struct RobustnessEpisode {
    std::uint64_t model_seed{};
    double sigma{};
    int episode{};
    double reward{};
};

struct RobustnessPoint {
    double sigma{};
    std::vector<double> per_model_mean;
    MeanStd aggregate;
};

struct RobustnessReport {
    std::vector<RobustnessPoint> points;
    /// Ordered by model, then sigma, then episode.
    std::vector<RobustnessEpisode> episodes;
};

struct GridCell {
    Interval angle_deg;
    Interval velocity;
    std::vector<double> per_model_rate;
    MeanStd aggregate;
};

struct GeneralizationReport {
    std::vector<std::uint64_t> model_seeds;
    /// Angle-major: all velocity bins of the first angle bin come first.
    std::vector<GridCell> cells;
};

/**
 * @brief Mean episode reward per (model, sigma) with observation noise
 * N(0, sigma²) on every normalized feature, aggregated across models.
 */
[[nodiscard]] RobustnessReport robustness_sweep(const AnsatzSpec &spec,
                                                std::span<const EvalModel> models,
                                                std::span<const double> sigmas,
                                                int episodes_per_point, std::uint64_t seed,
                                                const InitRanges &ranges = {},
                                                std::size_t workers = 1);

/**
 * @brief Attraction rate per (model, cell); theta from the angle bin
 * (converted to radians), theta_dot from the velocity bin, x and x_dot from
 * `base` ranges.
 */
[[nodiscard]] GeneralizationReport generalization_grid(const AnsatzSpec &spec,
                                                       std::span<const EvalModel> models,
                                                       const EvalGridSpec &grid,
                                                       std::uint64_t seed,
                                                       const InitRanges &base = {},
                                                       std::size_t workers = 1);

/// Per-cell label of candidate against baseline; grids must match.
[[nodiscard]] std::vector<Significance> compare_grids(const GeneralizationReport &baseline,
                                                      const GeneralizationReport &candidate);

/**
 * @brief Attraction rate of each policy on each range, as used to inspect
 * curriculum snapshots. Result is indexed [policy][range].
 */
[[nodiscard]] std::vector<std::vector<double>>
range_attraction_rates(const AnsatzSpec &spec, std::span<const PolicyParams> policies,
                       std::span<const InitRanges> ranges, int episodes, std::uint64_t seed);

} // namespace regqpg
