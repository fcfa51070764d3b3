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
 * @file regqpg_cli.cpp
 * Command-line front end. Talks to the library only through regqpg.h.
 *
 * Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.
 */
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "regqpg/regqpg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct ConfigDeleter {
    void operator()(regqpg_config *c) const { regqpg_config_destroy(c); }
};
using ConfigHandle = std::unique_ptr<regqpg_config, ConfigDeleter>;

struct Options {
    std::string config_path;
    std::string seed;
    std::string seeds;
    std::string out;
    std::string workers;
    std::string models;
    std::vector<std::string> sets;
    bool print_config{false};
};

int report(regqpg_status status) {
    std::fprintf(stderr, "regqpg: %s error: %s\n", regqpg_status_name(status), regqpg_last_error());
    return status == REGQPG_ERR_CONFIG || status == REGQPG_ERR_INVALID_ARGUMENT ? kExitUsage
                                                                                : kExitRuntime;
}

int set_key(regqpg_config *config, const std::string &key, const std::string &value) {
    if (value.empty()) {
        return kExitOk;
    }
    const auto status = regqpg_config_set(config, key.c_str(), value.c_str());
    return status == REGQPG_OK ? kExitOk : report(status);
}

int execute(const std::string &command, const Options &opts) {
    regqpg_config *raw = nullptr;
    if (const auto status = regqpg_config_create(&raw); status != REGQPG_OK) {
        return report(status);
    }
    ConfigHandle config(raw);

    if (!opts.config_path.empty()) {
        const auto status = regqpg_config_load_file(config.get(), opts.config_path.c_str());
        if (status != REGQPG_OK) {
            // An unreadable --config is a usage problem, not a failed run.
            report(status);
            return kExitUsage;
        }
    }

    const std::vector<std::pair<std::string, std::string>> flags{
        {"command", command},     {"seed", opts.seed},       {"n_seeds", opts.seeds},
        {"output_dir", opts.out}, {"workers", opts.workers}, {"eval.models", opts.models}};
    for (const auto &[key, value] : flags) {
        if (const int rc = set_key(config.get(), key, value); rc != kExitOk) {
            return rc;
        }
    }
    for (const auto &assignment : opts.sets) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::fprintf(stderr, "regqpg: usage error: --set expects key=value, got '%s'\n",
                         assignment.c_str());
            return kExitUsage;
        }
        const auto status = regqpg_config_set(config.get(), assignment.substr(0, eq).c_str(),
                                              assignment.substr(eq + 1).c_str());
        if (status != REGQPG_OK) {
            return report(status);
        }
    }

    if (const auto status = regqpg_config_validate(config.get()); status != REGQPG_OK) {
        return report(status);
    }

    if (opts.print_config) {
        std::size_t needed = 0;
        regqpg_config_serialize(config.get(), nullptr, 0, &needed);
        std::string text(needed, '\0');
        regqpg_config_serialize(config.get(), text.data(), text.size(), &needed);
        std::fputs(text.c_str(), stdout);
        return kExitOk;
    }

    if (const auto status = regqpg_run(config.get()); status != REGQPG_OK) {
        return report(status);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Lipschitz-regularized quantum policy gradient experiments on cart-pole"};
    app.set_version_flag("--version", std::string(regqpg_version()));
    app.require_subcommand(1);

    Options opts;
    const std::map<std::string, std::string> commands{
        {"train", "Train policies, one per seed"},
        {"curriculum", "Train with an expanding range of initial conditions"},
        {"eval-robustness", "Evaluate checkpoints under observation noise"},
        {"eval-generalization", "Evaluate checkpoints over a grid of initial conditions"}};
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config_path, "Config file (key = value lines)");
        sub->add_option("--seed", opts.seed, "Master seed");
        sub->add_option("--seeds", opts.seeds, "Number of derived seeds");
        sub->add_option("--out", opts.out, "Output directory");
        sub->add_option("--workers", opts.workers, "Parallel per-seed workers");
        sub->add_option("--set", opts.sets, "Override a config key (key=value)")->take_all();
        sub->add_flag("--print-config", opts.print_config, "Print the resolved config and exit");
        if (name.starts_with("eval-")) {
            sub->add_option("--models", opts.models, "Directory of checkpoint_*.txt files");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    for (const auto *sub : app.get_subcommands()) {
        return execute(sub->get_name(), opts);
    }
    return kExitUsage;
}
