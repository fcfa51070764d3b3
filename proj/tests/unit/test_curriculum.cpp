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

#include <cmath>

#include "regqpg/curriculum.hpp"
#include "regqpg/errors.hpp"

using namespace regqpg;

namespace {

const AnsatzSpec kSpec;

/// A policy trained on the default conditions; seed chosen so the result
/// balances reliably.
const PolicyParams &trained_policy() {
    static const PolicyParams p = [] {
        TrainConfig c;
        c.seed = derive_seed(7, {1});
        return train(c, kSpec, InitRanges{}).params;
    }();
    return p;
}

void check_same(const CurriculumResult &a, const CurriculumResult &b) {
    CHECK(a.total_failures == b.total_failures);
    CHECK(a.total_episodes == b.total_episodes);
    CHECK(a.converged == b.converged);
    CHECK(a.final_params == b.final_params);
    REQUIRE(a.ranges.size() == b.ranges.size());
    for (std::size_t i = 0; i < a.ranges.size(); ++i) {
        CHECK(a.ranges[i].failures == b.ranges[i].failures);
        CHECK(a.ranges[i].passed == b.ranges[i].passed);
        CHECK(a.ranges[i].snapshot == b.ranges[i].snapshot);
        CHECK(a.ranges[i].validations == b.ranges[i].validations);
    }
}

void check_invariants(const CurriculumResult &r, const CurriculumSchedule &s) {
    CHECK(r.total_failures <= s.f_max);
    CHECK(r.ranges.size() <= s.ranges.size());
    int failures = 0;
    long episodes = 0;
    for (std::size_t i = 0; i < r.ranges.size(); ++i) {
        const auto &o = r.ranges[i];
        failures += o.failures;
        episodes += o.episodes;
        CHECK(o.snapshot.has_value() == o.passed);
        // Every range but the current one was left by passing it.
        if (i + 1 < r.ranges.size()) {
            CHECK(o.passed);
        }
        CHECK(o.failures <= o.episodes);
    }
    CHECK(failures == r.total_failures);
    CHECK(episodes == r.total_episodes);
    CHECK(r.converged == (r.ranges.size() == s.ranges.size() && r.ranges.back().passed));
}

} // namespace

TEST_CASE("Default schedule", "[curriculum]") {
    const CurriculumSchedule s;
    REQUIRE(s.ranges.size() == 4);
    CHECK(s.ranges[0].theta_dot == Interval{-0.25, 0.25});
    CHECK(s.ranges[3].theta_dot == Interval{-1.75, 1.75});
    CHECK(s.ranges[2].theta == InitRanges{}.theta);
    CHECK(s.f_max == 1000);
    CHECK(s.validation_episodes == 100);
    CHECK(s.validation_threshold == 195.0);
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("Schedule validation", "[curriculum]") {
    CurriculumSchedule s;
    std::swap(s.ranges[0], s.ranges[1]);
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = CurriculumSchedule{};
    s.ranges[1] = s.ranges[0];
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = CurriculumSchedule{};
    s.ranges.clear();
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = CurriculumSchedule{};
    s.f_max = -1;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = CurriculumSchedule{};
    s.validation_episodes = 0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("Zero failure budget ends immediately", "[curriculum]") {
    CurriculumSchedule s;
    s.f_max = 0;
    const auto r = run_curriculum(TrainConfig{}, kSpec, s);
    CHECK_FALSE(r.converged);
    CHECK(r.total_failures == 0);
    CHECK(r.total_episodes == 0);
    REQUIRE(r.ranges.size() == 1);
    CHECK_FALSE(r.ranges[0].snapshot);
}

TEST_CASE("Validation of a uniform random policy", "[curriculum]") {
    const auto v = validate(kSpec, PolicyParams::zeros(kSpec), InitRanges{}, 100, 195.0, 1);
    CHECK(v.mean_reward > 15.0);
    CHECK(v.mean_reward < 35.0);
    CHECK_FALSE(v.passed);
    CHECK(v.failures == 100);

    SplitMix64 rng(2);
    const auto init = initialize_params(kSpec, rng);
    CHECK_FALSE(validate(kSpec, init, InitRanges{}, 100, 195.0, 3).passed);
    CHECK_THROWS_AS(validate(kSpec, init, InitRanges{}, 0, 195.0, 3), UsageError);
}

TEST_CASE("Validation threshold is strict", "[curriculum]") {
    const auto v = validate(kSpec, PolicyParams::zeros(kSpec), InitRanges{}, 50, 0.0, 4);
    CHECK(v.passed);
    CHECK_FALSE(validate(kSpec, PolicyParams::zeros(kSpec), InitRanges{}, 50, v.mean_reward, 4).passed);
    CHECK(validate(kSpec, PolicyParams::zeros(kSpec), InitRanges{}, 50, v.mean_reward - 1e-9, 4).passed);
}

TEST_CASE("Trained policy passes validation", "[curriculum][slow]") {
    const auto v = validate(kSpec, trained_policy(), InitRanges{}, 100, 195.0, 5);
    CHECK(v.mean_reward > 195.0);
    CHECK(v.passed);
}

TEST_CASE("Converged policy passes a default-range schedule without failures",
          "[curriculum][slow]") {
    CurriculumSchedule s;
    s.ranges = {InitRanges{}};
    TrainConfig c;
    c.seed = derive_seed(7, {1});
    const auto r = run_curriculum(c, kSpec, s, trained_policy());
    CHECK(r.converged);
    CHECK(r.total_failures == 0);
    REQUIRE(r.ranges.size() == 1);
    CHECK(r.ranges[0].passed);
    CHECK(r.ranges[0].snapshot == trained_policy());
    check_invariants(r, s);
}

TEST_CASE("Curriculum runs respect the failure budget and are deterministic", "[curriculum]") {
    CurriculumSchedule s;
    s.f_max = 40;
    s.validation_episodes = 10;
    TrainConfig c;
    c.seed = 9;
    const auto a = run_curriculum(c, kSpec, s);
    const auto b = run_curriculum(c, kSpec, s);
    check_same(a, b);
    check_invariants(a, s);
    CHECK(a.total_failures == 40);
    CHECK_FALSE(a.converged);
    CHECK(a.ranges[0].validations >= 1);
    CHECK(std::isfinite(a.ranges[0].validation_mean));
}

TEST_CASE("Episode cap stops runs that never exhaust the budget", "[curriculum]") {
    CurriculumSchedule s;
    s.max_episodes = 25;
    s.validation_episodes = 5;
    TrainConfig c;
    c.seed = 10;
    const auto r = run_curriculum(c, kSpec, s);
    CHECK(r.total_episodes == 25);
    check_invariants(r, s);
}

TEST_CASE("Curriculum advances through ranges and keeps snapshots", "[curriculum][slow]") {
    CurriculumSchedule s;
    s.f_max = 300;
    s.validation_episodes = 20;
    TrainConfig c;
    c.seed = derive_seed(7, {1});
    const auto r = run_curriculum(c, kSpec, s, trained_policy());
    check_invariants(r, s);
    REQUIRE(r.ranges.size() >= 2);
    CHECK(r.ranges[0].snapshot == trained_policy());
}
