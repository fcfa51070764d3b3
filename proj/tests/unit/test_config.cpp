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

#include <filesystem>
#include <random>
#include <string>

#include "regqpg/config.hpp"
#include "regqpg/errors.hpp"

using namespace regqpg;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string config_error(const std::string &text) {
    try {
        (void)parse_config(text);
    } catch (const ConfigError &e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("Empty config gives the published hyperparameters", "[config]") {
    const auto c = parse_config("");
    CHECK(c == ExperimentConfig{});
    CHECK(c.train.epochs == 100);
    CHECK(c.train.batch_size == 10);
    CHECK(c.train.learning_rate == 0.05);
    CHECK(c.train.gamma == 0.99);
    CHECK(c.train.lambda == 0.0);
    CHECK(c.ansatz.n_layers == 3);
    CHECK(c.ansatz.n_qubits == 4);
    CHECK(c.f_max == 1000);
    CHECK(c.sigmas.size() == 9);
    CHECK(c.sigmas.back() == 0.8);
}

TEST_CASE("Values are parsed with comments and whitespace", "[config]") {
    const auto c = parse_config(R"(# campaign
command = curriculum
seed=42
  train.lambda   =  0.1
train.optimizer = vanilla
train.baseline = false
ansatz.encoding = rz_rz
env.init.theta_dot = -0.1:0.1
curriculum.theta_dot_ranges = -0.5:0.5, -1:1
eval.sigmas = 0,0.2,0.4
manifest.started = 2020-01-01T00:00:00Z
)");
    CHECK(c.command == Command::Curriculum);
    CHECK(c.seed == 42);
    CHECK(c.train.lambda == 0.1);
    CHECK(c.train.optimizer == Optimizer::VanillaAscent);
    CHECK_FALSE(c.train.baseline);
    CHECK(c.ansatz.encoding == EncodingBlock::RzRz);
    CHECK(c.init.theta_dot == Interval{-0.1, 0.1});
    REQUIRE(c.curriculum_theta_dot.size() == 2);
    CHECK(c.curriculum_theta_dot[1] == Interval{-1.0, 1.0});
    CHECK(c.sigmas == std::vector<double>{0.0, 0.2, 0.4});
    CHECK(c.schedule().ranges[1].theta_dot == Interval{-1.0, 1.0});
}

TEST_CASE("Invalid configs are rejected with the key path", "[config]") {
    CHECK_THAT(config_error("train.lambda = -0.1"), ContainsSubstring("lambda"));
    CHECK_THAT(config_error("train.lamda = 0.1"), ContainsSubstring("did you mean 'train.lambda'"));
    CHECK_THAT(config_error("lambda = 0.1"), ContainsSubstring("train.lambda"));
    CHECK_THAT(config_error("train.epochs = ten"), ContainsSubstring("train.epochs"));
    CHECK_THAT(config_error("train.gamma = 0.9x"), ContainsSubstring("train.gamma"));
    CHECK_THAT(config_error("train.optimizer = sgd"), ContainsSubstring("adam, vanilla"));
    CHECK_THAT(config_error("seed = 1\nseed = 2"), ContainsSubstring("more than once"));
    CHECK_THAT(config_error("seed = 1\nnot a pair\n"), ContainsSubstring("line 2"));
    CHECK_THAT(config_error("n_seeds = 0"), ContainsSubstring("n_seeds"));
    CHECK_THAT(config_error("ansatz.n_qubits = 3"), ContainsSubstring("ansatz.n_qubits"));
    CHECK_THAT(config_error("env.init.theta = 0.1:-0.1"), ContainsSubstring("env.init"));
    CHECK_THAT(config_error("curriculum.theta_dot_ranges = -1:1,-0.5:0.5"),
               ContainsSubstring("curriculum"));
    CHECK_THAT(config_error("eval.sigmas = 0,-0.2"), ContainsSubstring("eval.sigmas"));
    CHECK_THAT(config_error("command = evaluate"), ContainsSubstring("evaluate"));
    CHECK_THAT(config_error("train.learning_rate = nan"), ContainsSubstring("train.learning_rate"));
}

TEST_CASE("Commands round-trip through their names", "[config]") {
    for (const auto c : {Command::Train, Command::Curriculum, Command::EvalRobustness,
                         Command::EvalGeneralization}) {
        CHECK(parse_command(to_string(c)) == c);
    }
    CHECK(to_string(Command::EvalRobustness) == "eval-robustness");
    CHECK_THROWS_AS(parse_command("fit"), ConfigError);
}

TEST_CASE("Serialization round-trips", "[config][property]") {
    const ExperimentConfig defaults;
    CHECK(parse_config(serialize_config(defaults)) == defaults);

    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ExperimentConfig c;
        c.command = static_cast<Command>(i % 4);
        c.seed = gen();
        c.n_seeds = 1 + i % 7;
        c.output_dir = "out/run" + std::to_string(i);
        c.train.lambda = u(gen);
        c.train.learning_rate = 0.001 + u(gen);
        c.train.gamma = u(gen);
        c.train.optimizer = i % 2 ? Optimizer::VanillaAscent : Optimizer::AdaptiveMoment;
        c.train.return_scaling = i % 3 ? ReturnScaling::Raw : ReturnScaling::Standardize;
        c.ansatz.entangler = i % 2 ? EntanglerPlacement::AfterEveryLayer : EntanglerPlacement::BetweenLayers;
        c.init.theta = {-0.2 * u(gen), 0.2 * u(gen)};
        c.sigmas = {u(gen), 1.0 + u(gen)};
        c.grid.mirror_velocity = i % 2 == 0;
        c.models_dir = i % 2 ? "" : "models";
        REQUIRE(parse_config(serialize_config(c)) == c);
    }
}

TEST_CASE("Every registered key is serialized", "[config]") {
    const auto text = serialize_config(ExperimentConfig{});
    for (const auto &key : config_keys()) {
        CHECK_THAT(text, ContainsSubstring("\n" + key + " = ") || Catch::Matchers::StartsWith(key + " = "));
    }
    CHECK(parse_key_values(text).size() == config_keys().size());
}

TEST_CASE("Doubles use round-trip formatting", "[config]") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.5e-9) == "-2.5e-09");
    CHECK(format_double(200.0) == "200");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("Checkpoints round-trip exactly", "[config]") {
    AnsatzSpec spec;
    spec.entangler = EntanglerPlacement::AfterEveryLayer;
    std::mt19937_64 gen(2);
    std::normal_distribution<double> n(0.0, 1.0);
    Checkpoint ck{spec, PolicyParams::zeros(spec), 0.3, 123456789012345ULL};
    for (auto &v : ck.params.nu.values()) {
        v = n(gen);
    }
    for (auto &v : ck.params.omega.values()) {
        v = n(gen) * 1e-7;
    }
    CHECK(parse_checkpoint(serialize_checkpoint(ck)) == ck);

    const auto dir = std::filesystem::temp_directory_path() / "regqpg_unit_config";
    std::filesystem::create_directories(dir);
    save_checkpoint(dir / "c.txt", ck);
    CHECK(load_checkpoint(dir / "c.txt") == ck);
    std::filesystem::remove_all(dir);
}

TEST_CASE("Malformed checkpoints are rejected", "[config]") {
    const AnsatzSpec spec;
    const auto text = serialize_checkpoint({spec, PolicyParams::zeros(spec), 0.0, 1});
    CHECK_THROWS_AS(parse_checkpoint(""), ConfigError);

    auto short_omega = text;
    short_omega.replace(short_omega.find("omega = 0,"), 10, "omega = ");
    CHECK_THROWS_AS(parse_checkpoint(short_omega), ConfigError);

    auto other_format = text;
    other_format.replace(other_format.find("checkpoint-1"), 12, "checkpoint-9");
    CHECK_THROWS_AS(parse_checkpoint(other_format), ConfigError);

    CHECK_THROWS_AS(parse_checkpoint(text + "extra = 1\n"), ConfigError);
    CHECK_THROWS_AS(load_checkpoint("/nonexistent/checkpoint.txt"), IoError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/config.txt"), IoError);
}
