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
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "regqpg/errors.hpp"
#include "regqpg/evalharness.hpp"
#include "regqpg/trainer.hpp"

using namespace regqpg;
using Catch::Matchers::WithinAbs;

namespace {

const AnsatzSpec kSpec;

const PolicyParams &trained_policy() {
    static const PolicyParams p = [] {
        TrainConfig c;
        c.seed = derive_seed(7, {1});
        return train(c, kSpec, InitRanges{}).params;
    }();
    return p;
}

Significance mirror(Significance s) {
    switch (s) {
    case Significance::ConsiderablyBetter:
        return Significance::ConsiderablyWorse;
    case Significance::SlightlyBetter:
        return Significance::SlightlyWorse;
    case Significance::SlightlyWorse:
        return Significance::SlightlyBetter;
    case Significance::ConsiderablyWorse:
        return Significance::ConsiderablyBetter;
    default:
        return Significance::Neutral;
    }
}

} // namespace

TEST_CASE("Attraction rate", "[evalharness]") {
    CHECK(attraction_rate(std::vector<double>(100, 200.0)) == 1.0);
    std::vector<double> mixed(75, 200.0);
    mixed.insert(mixed.end(), 25, 150.0);
    CHECK(attraction_rate(mixed) == 0.75);
    CHECK(attraction_rate(std::vector<double>{199.0, 12.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(attraction_rate(std::vector<double>{}), UsageError);

    std::mt19937_64 gen(1);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(mixed.begin(), mixed.end(), gen);
        REQUIRE(attraction_rate(mixed) == 0.75);
    }
}

TEST_CASE("Population mean and std", "[evalharness]") {
    const auto ms = mean_std(std::vector<double>{2, 4, 4, 4, 5, 5, 7, 9});
    CHECK(ms.mean == 5.0);
    CHECK(ms.std == 2.0);
    CHECK(mean_std(std::vector<double>{3.0}).std == 0.0);
}

TEST_CASE("Significance labels", "[evalharness]") {
    CHECK(significance_label({0.5, 0.1}, {0.8, 0.1}) == Significance::ConsiderablyBetter);
    CHECK(significance_label({0.5, 0.1}, {0.62, 0.1}) == Significance::SlightlyBetter);
    CHECK(significance_label({0.5, 0.1}, {0.5, 0.1}) == Significance::Neutral);
    CHECK(significance_label({0.8, 0.1}, {0.5, 0.1}) == Significance::ConsiderablyWorse);
    CHECK(significance_label({0.62, 0.1}, {0.5, 0.1}) == Significance::SlightlyWorse);
    CHECK(significance_label({0.5, 0.1}, {0.55, 0.1}) == Significance::Neutral);
    CHECK(to_string(Significance::SlightlyBetter) == "slightly_better");
}

TEST_CASE("Significance labels are antisymmetric", "[evalharness][property]") {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> mean(0.0, 1.0), sd(0.0, 0.2);
    for (int i = 0; i < 2000; ++i) {
        const MeanStd a{mean(gen), sd(gen)}, b{mean(gen), sd(gen)};
        REQUIRE(significance_label(b, a) == mirror(significance_label(a, b)));
        REQUIRE(significance_label(a, a) == Significance::Neutral);
    }
}

TEST_CASE("Default evaluation grid", "[evalharness]") {
    const EvalGridSpec g;
    REQUIRE(g.angle_bins.size() == 11);
    CHECK_THAT(g.angle_bins.front().lo, WithinAbs(-2.75, 1e-15));
    CHECK_THAT(g.angle_bins.front().hi, WithinAbs(-2.25, 1e-15));
    CHECK_THAT(g.angle_bins.back().hi, WithinAbs(2.75, 1e-15));
    REQUIRE(g.velocity_bins.size() == 13);
    CHECK_THAT(g.velocity_bins.front().hi, WithinAbs(0.02, 1e-15));
    CHECK_THAT(g.velocity_bins.back().lo, WithinAbs(0.24, 1e-15));
    CHECK_THAT(g.velocity_bins.back().hi, WithinAbs(0.26, 1e-15));
    CHECK(g.episodes_per_cell == 100);
    CHECK_NOTHROW(g.validate());
    CHECK(g.effective_velocity_bins().size() == 13);

    EvalGridSpec m = g;
    m.mirror_velocity = true;
    const auto bins = m.effective_velocity_bins();
    REQUIRE(bins.size() == 26);
    CHECK(bins[13].lo == -bins[0].hi);
    CHECK(bins[13].hi == -bins[0].lo);
}

TEST_CASE("Grid validation", "[evalharness]") {
    EvalGridSpec g;
    g.angle_bins = {{0.0, 1.0}, {0.5, 1.5}};
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g = EvalGridSpec{};
    g.velocity_bins = {{0.1, 0.2}, {0.0, 0.05}};
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g = EvalGridSpec{};
    g.angle_bins = {{1.0, 0.0}};
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g = EvalGridSpec{};
    g.episodes_per_cell = 0;
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g = EvalGridSpec{};
    g.angle_bins = {{-20.0, -13.0}};
    CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("Robustness sweep structure and determinism", "[evalharness]") {
    SplitMix64 rng(3);
    const std::vector<EvalModel> models{{11, initialize_params(kSpec, rng)},
                                        {12, PolicyParams::zeros(kSpec)}};
    const std::vector<double> sigmas{0.0, 0.4};
    const auto a = robustness_sweep(kSpec, models, sigmas, 10, 5);
    const auto b = robustness_sweep(kSpec, models, sigmas, 10, 5, InitRanges{}, 3);
    REQUIRE(a.points.size() == 2);
    REQUIRE(a.episodes.size() == 2 * 2 * 10);
    CHECK(a.episodes[0].model_seed == 11);
    CHECK(a.episodes[10].sigma == 0.4);
    CHECK(a.episodes[20].model_seed == 12);
    for (std::size_t i = 0; i < a.episodes.size(); ++i) {
        REQUIRE(a.episodes[i].reward == b.episodes[i].reward);
    }

    // Aggregates are recomputable from the per-episode rows.
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
        std::vector<double> per_model;
        for (const auto &m : models) {
            double sum = 0.0;
            int n = 0;
            for (const auto &e : a.episodes) {
                if (e.model_seed == m.seed && e.sigma == sigmas[s]) {
                    sum += e.reward;
                    ++n;
                }
            }
            per_model.push_back(sum / n);
        }
        CHECK(per_model == a.points[s].per_model_mean);
        const auto ms = mean_std(per_model);
        CHECK(ms.mean == a.points[s].aggregate.mean);
        CHECK(ms.std == a.points[s].aggregate.std);
    }

    CHECK_THROWS_AS(robustness_sweep(kSpec, std::vector<EvalModel>{}, sigmas, 10, 5), UsageError);
    const std::vector<double> negative{-0.1};
    CHECK_THROWS_AS(robustness_sweep(kSpec, models, negative, 10, 5), ConfigError);
}

TEST_CASE("Noise degrades a trained policy to random play", "[evalharness][slow]") {
    const std::vector<EvalModel> models{{1, trained_policy()}};
    const std::vector<double> sigmas{0.0, 0.8};
    const auto r = robustness_sweep(kSpec, models, sigmas, 100, 6);
    CHECK(r.points[0].aggregate.mean >= 190.0);
    CHECK(r.points[1].aggregate.mean < 60.0);
    CHECK(r.points[1].aggregate.mean > 10.0);
}

TEST_CASE("Generalization grid structure and determinism", "[evalharness]") {
    SplitMix64 rng(7);
    const std::vector<EvalModel> models{{21, initialize_params(kSpec, rng)},
                                        {22, PolicyParams::zeros(kSpec)}};
    EvalGridSpec g;
    g.angle_bins = {{-1.0, 0.0}, {0.0, 1.0}};
    g.velocity_bins = {{0.0, 0.1}, {0.1, 0.2}, {0.2, 0.3}};
    g.episodes_per_cell = 5;
    const auto a = generalization_grid(kSpec, models, g, 8);
    const auto b = generalization_grid(kSpec, models, g, 8, InitRanges{}, 4);
    CHECK(a.model_seeds == std::vector<std::uint64_t>{21, 22});
    REQUIRE(a.cells.size() == 6);
    CHECK(a.cells[1].angle_deg == g.angle_bins[0]);
    CHECK(a.cells[1].velocity == g.velocity_bins[1]);
    CHECK(a.cells[3].angle_deg == g.angle_bins[1]);
    for (std::size_t c = 0; c < a.cells.size(); ++c) {
        CHECK(a.cells[c].per_model_rate == b.cells[c].per_model_rate);
        for (const double r : a.cells[c].per_model_rate) {
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
        }
        CHECK(a.cells[c].aggregate.std >= 0.0);
    }
    const auto labels = compare_grids(a, a);
    CHECK(std::all_of(labels.begin(), labels.end(), [](auto l) { return l == Significance::Neutral; }));
}

TEST_CASE("Trained policy is attracted near the origin", "[evalharness][slow]") {
    const std::vector<EvalModel> models{{1, trained_policy()}};
    EvalGridSpec point;
    point.angle_bins = {{0.0, 0.0}};
    point.velocity_bins = {{0.0, 0.0}};
    CHECK(generalization_grid(kSpec, models, point, 9).cells[0].aggregate.mean >= 0.95);

    EvalGridSpec g;
    g.angle_bins = {{-0.25, 0.25}, {2.25, 2.75}};
    g.velocity_bins = {{0.0, 0.02}, {0.24, 0.26}};
    const auto r = generalization_grid(kSpec, models, g, 9);
    CHECK(r.cells[0].aggregate.mean >= 0.95);
    CHECK(r.cells[3].aggregate.mean <= r.cells[0].aggregate.mean);
}

TEST_CASE("Snapshot attraction matrix", "[evalharness]") {
    const std::vector<PolicyParams> policies{PolicyParams::zeros(kSpec), PolicyParams::zeros(kSpec)};
    InitRanges wide;
    wide.theta_dot = {-1.0, 1.0};
    const std::vector<InitRanges> ranges{InitRanges{}, wide, wide};
    const auto m = range_attraction_rates(kSpec, policies, ranges, 5, 10);
    REQUIRE(m.size() == 2);
    REQUIRE(m[0].size() == 3);
    CHECK(m[0][0] == 0.0);
    CHECK(m[0] == m[1]);
}
