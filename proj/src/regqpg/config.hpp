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
 * @file config.hpp
 * Experiment configuration in a flat `section.key = value` text format,
 * plus the checkpoint file format for trained policies.
 *
 * Lines starting with '#' are comments. Keys under `manifest.` are
 * bookkeeping written by runs and are ignored when parsing, so a run
 * manifest can be fed back as a config.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regqpg/cartpole.hpp"
#include "regqpg/curriculum.hpp"
#include "regqpg/evalharness.hpp"
#include "regqpg/policy.hpp"
#include "regqpg/trainer.hpp"

namespace regqpg {

enum class Command { Train, Curriculum, EvalRobustness, EvalGeneralization };

[[nodiscard]] std::string_view to_string(Command c) noexcept;
/// Accepts the CLI spellings (train, curriculum, eval-robustness, eval-generalization).
[[nodiscard]] Command parse_command(std::string_view s);

struct ExperimentConfig {
    Command command{Command::Train};
    std::uint64_t seed{0};
    int n_seeds{1};
    int workers{1};
    std::string output_dir{"out"};

    AnsatzSpec ansatz;
    TrainConfig train;
    InitRanges init;

    /// theta_dot intervals of the curriculum; other features follow `init`.
    std::vector<Interval> curriculum_theta_dot{{-0.25, 0.25}, {-0.75, 0.75}, {-1.25, 1.25}, {-1.75, 1.75}};
    int f_max{1000};
    int validation_episodes{100};
    double validation_threshold{195.0};
    int validation_period{10};
    long max_episodes{200000};

    std::vector<double> sigmas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    int robustness_episodes{100};
    EvalGridSpec grid;
    /// Directory holding checkpoint_*.txt files for the eval commands.
    std::string models_dir;

    [[nodiscard]] CurriculumSchedule schedule() const;
    /// Throws ConfigError naming the offending key.
    void validate() const;
    bool operator==(const ExperimentConfig &) const = default;
};

/// Every recognised key, in serialization order.
[[nodiscard]] const std::vector<std::string> &config_keys();

/// Sets one key from its text value. Unknown keys are rejected with a
/// suggestion; invalid values are rejected with the key path.
void set_config_value(ExperimentConfig &config, std::string_view key, std::string_view value);

/// Splits config text into (key, value) pairs; throws ConfigError with the
/// line number on malformed lines.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

/// Applies every key in `text` to `config` without validating the result;
/// manifest.* keys are skipped and repeated keys are rejected.
void apply_config_text(ExperimentConfig &config, std::string_view text);

/// Applies text on top of `base` and validates the result.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});

[[nodiscard]] ExperimentConfig load_config_file(const std::filesystem::path &path,
                                                ExperimentConfig base = {});

[[nodiscard]] std::string serialize_config(const ExperimentConfig &config);

/// 17 significant digits, the round-trip format used in every output file.
[[nodiscard]] std::string format_double(double v);

/// A trained policy on disk.
struct Checkpoint {
    AnsatzSpec spec;
    PolicyParams params;
    double lambda{0.0};
    std::uint64_t seed{0};

    bool operator==(const Checkpoint &) const = default;
};

[[nodiscard]] std::string serialize_checkpoint(const Checkpoint &ckpt);
[[nodiscard]] Checkpoint parse_checkpoint(std::string_view text);
void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt);
[[nodiscard]] Checkpoint load_checkpoint(const std::filesystem::path &path);

[[nodiscard]] std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

} // namespace regqpg
