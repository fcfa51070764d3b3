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
#include "regqpg/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <system_error>

#include "regqpg/errors.hpp"
#include "regqpg/parallel.hpp"

namespace regqpg {

namespace fs = std::filesystem;

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string index_name(const char *prefix, std::size_t i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu", prefix, i);
    return buf;
}

void prepare_output_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
}

struct ManifestWriter {
    explicit ManifestWriter(const ExperimentConfig &c) : config(c) {}

    const ExperimentConfig &config;
    std::string started = utc_timestamp();
    std::vector<std::string> extra;

    void write() const {
        std::string text = "# regqpg run manifest; feed back with --config to reproduce\n";
        text += "manifest.version = " + std::string(kVersion) + "\n";
        text += "manifest.started = " + started + "\n";
        text += "manifest.finished = " + utc_timestamp() + "\n";
        for (const auto &line : extra) {
            text += line + "\n";
        }
        text += serialize_config(config);
        write_text_file(fs::path(config.output_dir) / "manifest.txt", text);
    }
};

void add_seed_lines(ManifestWriter &m, const std::vector<std::uint64_t> &seeds) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        m.extra.push_back("manifest.derived_seed." + std::to_string(i) + " = " +
                          std::to_string(seeds[i]));
    }
}

void run_train(const ExperimentConfig &config) {
    ManifestWriter m(config);
    const auto seeds = derive_run_seeds(config.seed, config.n_seeds);
    std::vector<SeedTraining> runs(seeds.size());
    parallel_for(seeds.size(), static_cast<std::size_t>(config.workers), [&](std::size_t i) {
        TrainConfig tc = config.train;
        tc.seed = seeds[i];
        runs[i] = {seeds[i], train(tc, config.ansatz, config.init)};
    });

    const fs::path out(config.output_dir);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        save_checkpoint(out / (index_name("checkpoint", i) + ".txt"),
                        {config.ansatz, runs[i].result.params, config.train.lambda, seeds[i]});
    }
    write_text_file(out / "telemetry.csv", telemetry_csv(runs));
    add_seed_lines(m, seeds);
    m.write();
}

void run_curriculum_campaign(const ExperimentConfig &config) {
    ManifestWriter m(config);
    const auto seeds = derive_run_seeds(config.seed, config.n_seeds);
    const auto schedule = config.schedule();
    std::vector<SeedCurriculum> runs(seeds.size());
    std::vector<std::vector<std::vector<double>>> snapshot_rates(seeds.size());
    parallel_for(seeds.size(), static_cast<std::size_t>(config.workers), [&](std::size_t i) {
        TrainConfig tc = config.train;
        tc.seed = seeds[i];
        runs[i] = {seeds[i], run_curriculum(tc, config.ansatz, schedule)};
        std::vector<PolicyParams> snaps;
        for (const auto &r : runs[i].result.ranges) {
            if (r.snapshot) {
                snaps.push_back(*r.snapshot);
            }
        }
        snapshot_rates[i] = range_attraction_rates(config.ansatz, snaps, schedule.ranges,
                                                   config.validation_episodes,
                                                   derive_seed(seeds[i], {3}));
    });

    const fs::path out(config.output_dir);
    std::string gen = "seed,snapshot_range_index,eval_range_index,eval_range_low,eval_range_high,"
                      "attraction_rate\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto &res = runs[i].result;
        save_checkpoint(out / (index_name("checkpoint", i) + ".txt"),
                        {config.ansatz, res.final_params, config.train.lambda, seeds[i]});
        for (std::size_t k = 0; k < res.ranges.size(); ++k) {
            if (res.ranges[k].snapshot) {
                save_checkpoint(out / (index_name("snapshot", i) + "_range" + std::to_string(k) + ".txt"),
                                {config.ansatz, *res.ranges[k].snapshot, config.train.lambda, seeds[i]});
            }
        }
        for (std::size_t s = 0; s < snapshot_rates[i].size(); ++s) {
            for (std::size_t r = 0; r < schedule.ranges.size(); ++r) {
                gen += std::to_string(seeds[i]) + "," + std::to_string(s) + "," + std::to_string(r) +
                       "," + format_double(schedule.ranges[r].theta_dot.lo) + "," +
                       format_double(schedule.ranges[r].theta_dot.hi) + "," +
                       format_double(snapshot_rates[i][s][r]) + "\n";
            }
        }
    }
    write_text_file(out / "curriculum.csv", curriculum_csv(runs, schedule));
    write_text_file(out / "curriculum_generalization.csv", gen);
    add_seed_lines(m, seeds);
    m.write();
}

void add_model_lines(ManifestWriter &m, const std::vector<EvalModel> &models) {
    for (std::size_t i = 0; i < models.size(); ++i) {
        m.extra.push_back("manifest.model_seed." + std::to_string(i) + " = " +
                          std::to_string(models[i].seed));
    }
}

void run_eval_robustness(const ExperimentConfig &config) {
    ManifestWriter m(config);
    const auto models = load_models(config.models_dir, config.ansatz);
    const auto report = robustness_sweep(config.ansatz, models, config.sigmas,
                                         config.robustness_episodes, config.seed, config.init,
                                         static_cast<std::size_t>(config.workers));
    const fs::path out(config.output_dir);
    write_text_file(out / "robustness.csv", robustness_csv(report));
    write_text_file(out / "robustness_summary.csv", robustness_summary_csv(report));
    add_model_lines(m, models);
    m.write();
}

void run_eval_generalization(const ExperimentConfig &config) {
    ManifestWriter m(config);
    const auto models = load_models(config.models_dir, config.ansatz);
    const auto report = generalization_grid(config.ansatz, models, config.grid, config.seed,
                                            config.init, static_cast<std::size_t>(config.workers));
    const fs::path out(config.output_dir);
    write_text_file(out / "generalization.csv", generalization_csv(report));
    write_text_file(out / "generalization_summary.csv", generalization_summary_csv(report));
    add_model_lines(m, models);
    m.write();
}

} // namespace

std::vector<std::uint64_t> derive_run_seeds(std::uint64_t master, int n) {
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < n; ++i) {
        seeds.push_back(derive_seed(master, {static_cast<std::uint64_t>(i)}));
    }
    return seeds;
}

std::vector<EvalModel> load_models(const fs::path &dir, const AnsatzSpec &spec) {
    std::error_code ec;
    if (dir.empty() || !fs::is_directory(dir, ec)) {
        throw IoError("model directory '" + dir.string() + "' does not exist");
    }
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("checkpoint_") && name.ends_with(".txt")) {
            files.push_back(entry.path());
        }
    }
    if (files.empty()) {
        throw IoError("no checkpoint_*.txt files in '" + dir.string() + "'");
    }
    std::sort(files.begin(), files.end());
    std::vector<EvalModel> models;
    for (const auto &f : files) {
        auto ckpt = load_checkpoint(f);
        if (!(ckpt.spec == spec)) {
            throw ConfigError(f.string() + ": checkpoint ansatz does not match the configured ansatz");
        }
        models.push_back({ckpt.seed, std::move(ckpt.params)});
    }
    return models;
}

std::string telemetry_csv(const std::vector<SeedTraining> &runs) {
    std::string out = "seed,epoch,mean_reward,reg_objective,lipschitz_total\n";
    for (const auto &run : runs) {
        for (const auto &r : run.result.records) {
            out += std::to_string(run.seed) + "," + std::to_string(r.epoch) + "," +
                   format_double(r.mean_reward) + "," + format_double(r.reg_objective) + "," +
                   format_double(r.lipschitz_total) + "\n";
        }
    }
    return out;
}

std::string curriculum_csv(const std::vector<SeedCurriculum> &runs,
                           const CurriculumSchedule &schedule) {
    std::string out = "seed,range_index,range_low,range_high,failures,passed,validation_mean\n";
    for (const auto &run : runs) {
        for (std::size_t k = 0; k < run.result.ranges.size(); ++k) {
            const auto &r = run.result.ranges[k];
            out += std::to_string(run.seed) + "," + std::to_string(k) + "," +
                   format_double(schedule.ranges[k].theta_dot.lo) + "," +
                   format_double(schedule.ranges[k].theta_dot.hi) + "," + std::to_string(r.failures) +
                   "," + (r.passed ? "1" : "0") + "," +
                   (r.validations > 0 ? format_double(r.validation_mean) : std::string("nan")) + "\n";
        }
    }
    return out;
}

std::string robustness_csv(const RobustnessReport &report) {
    std::string out = "seed,sigma,episode,reward\n";
    for (const auto &e : report.episodes) {
        out += std::to_string(e.model_seed) + "," + format_double(e.sigma) + "," +
               std::to_string(e.episode) + "," + format_double(e.reward) + "\n";
    }
    return out;
}

std::string robustness_summary_csv(const RobustnessReport &report) {
    std::string out = "sigma,mean_reward,std_reward,n_models\n";
    for (const auto &p : report.points) {
        out += format_double(p.sigma) + "," + format_double(p.aggregate.mean) + "," +
               format_double(p.aggregate.std) + "," + std::to_string(p.per_model_mean.size()) + "\n";
    }
    return out;
}

std::string generalization_csv(const GeneralizationReport &report) {
    std::string out = "seed,angle_bin_low,angle_bin_high,vel_bin_low,vel_bin_high,attraction_rate\n";
    for (std::size_t m = 0; m < report.model_seeds.size(); ++m) {
        for (const auto &c : report.cells) {
            out += std::to_string(report.model_seeds[m]) + "," + format_double(c.angle_deg.lo) + "," +
                   format_double(c.angle_deg.hi) + "," + format_double(c.velocity.lo) + "," +
                   format_double(c.velocity.hi) + "," + format_double(c.per_model_rate[m]) + "\n";
        }
    }
    return out;
}

std::string generalization_summary_csv(const GeneralizationReport &report) {
    std::string out = "angle_bin_low,angle_bin_high,vel_bin_low,vel_bin_high,mean_rate,std_rate\n";
    for (const auto &c : report.cells) {
        out += format_double(c.angle_deg.lo) + "," + format_double(c.angle_deg.hi) + "," +
               format_double(c.velocity.lo) + "," + format_double(c.velocity.hi) + "," +
               format_double(c.aggregate.mean) + "," + format_double(c.aggregate.std) + "\n";
    }
    return out;
}

void run_experiment(const ExperimentConfig &config) {
    config.validate();
    prepare_output_dir(config.output_dir);
    switch (config.command) {
    case Command::Train:
        run_train(config);
        break;
    case Command::Curriculum:
        run_curriculum_campaign(config);
        break;
    case Command::EvalRobustness:
        run_eval_robustness(config);
        break;
    case Command::EvalGeneralization:
        run_eval_generalization(config);
        break;
    }
}

} // namespace regqpg
