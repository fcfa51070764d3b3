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
 * @file experiment.hpp
 * Campaign orchestration behind the CLI: per-seed runs, checkpoints, CSV
 * reports and the run manifest.
 *
 * Output layout (all in ExperimentConfig::output_dir):
 *   manifest.txt                  every command
 *   telemetry.csv                 train
 *   checkpoint_NNN.txt            train, curriculum (final parameters)
 *   curriculum.csv                curriculum
 *   snapshot_NNN_rangeK.txt       curriculum
 *   curriculum_generalization.csv curriculum
 *   robustness.csv, robustness_summary.csv         eval-robustness
 *   generalization.csv, generalization_summary.csv eval-generalization
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "regqpg/config.hpp"
#include "regqpg/curriculum.hpp"
#include "regqpg/evalharness.hpp"
#include "regqpg/trainer.hpp"

namespace regqpg {

inline constexpr const char *kVersion = "0.1.0";

/// seed_i = derive_seed(master, {i}) for i in [0, n).
[[nodiscard]] std::vector<std::uint64_t> derive_run_seeds(std::uint64_t master, int n);

/// Loads every checkpoint_*.txt in `dir` (sorted by file name) and checks
/// it against the ansatz; throws IoError if none exist, ConfigError on mismatch.
[[nodiscard]] std::vector<EvalModel> load_models(const std::filesystem::path &dir,
                                                 const AnsatzSpec &spec);

struct SeedTraining {
    std::uint64_t seed{};
    TrainResult result;
};

struct SeedCurriculum {
    std::uint64_t seed{};
    CurriculumResult result;
};

[[nodiscard]] std::string telemetry_csv(const std::vector<SeedTraining> &runs);
[[nodiscard]] std::string curriculum_csv(const std::vector<SeedCurriculum> &runs,
                                         const CurriculumSchedule &schedule);
[[nodiscard]] std::string robustness_csv(const RobustnessReport &report);
[[nodiscard]] std::string robustness_summary_csv(const RobustnessReport &report);
[[nodiscard]] std::string generalization_csv(const GeneralizationReport &report);
[[nodiscard]] std::string generalization_summary_csv(const GeneralizationReport &report);

/// Runs config.command and writes all outputs. Throws on failure.
void run_experiment(const ExperimentConfig &config);

} // namespace regqpg
