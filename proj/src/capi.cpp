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
#include "regqpg/regqpg.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "regqpg/config.hpp"
#include "regqpg/errors.hpp"
#include "regqpg/experiment.hpp"
#include "regqpg/policy.hpp"

struct regqpg_config {
    regqpg::ExperimentConfig value;
};

struct regqpg_policy {
    regqpg::Checkpoint checkpoint;
};

namespace {

thread_local std::string last_error;

regqpg_status fail(regqpg_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

template <class Fn> regqpg_status guarded(Fn &&fn) noexcept {
    try {
        fn();
        last_error.clear();
        return REGQPG_OK;
    } catch (const regqpg::ConfigError &e) {
        return fail(REGQPG_ERR_CONFIG, e.what());
    } catch (const regqpg::IoError &e) {
        return fail(REGQPG_ERR_IO, e.what());
    } catch (const regqpg::DegeneratePolicyError &e) {
        return fail(REGQPG_ERR_DEGENERATE, e.what());
    } catch (const regqpg::UsageError &e) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc &) {
        return fail(REGQPG_ERR_RUNTIME, "out of memory");
    } catch (const std::exception &e) {
        return fail(REGQPG_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(REGQPG_ERR_RUNTIME, "unknown error");
    }
}

} // namespace

extern "C" {

const char *regqpg_version(void) { return regqpg::kVersion; }

const char *regqpg_last_error(void) { return last_error.c_str(); }

const char *regqpg_status_name(regqpg_status status) {
    switch (status) {
    case REGQPG_OK:
        return "ok";
    case REGQPG_ERR_INVALID_ARGUMENT:
        return "invalid_argument";
    case REGQPG_ERR_CONFIG:
        return "config";
    case REGQPG_ERR_IO:
        return "io";
    case REGQPG_ERR_RUNTIME:
        return "runtime";
    case REGQPG_ERR_DEGENERATE:
        return "degenerate";
    }
    return "unknown";
}

regqpg_status regqpg_config_create(regqpg_config **out) {
    if (out == nullptr) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, "out is null");
    }
    return guarded([&] { *out = new regqpg_config{}; });
}

void regqpg_config_destroy(regqpg_config *config) { delete config; }

regqpg_status regqpg_config_load_file(regqpg_config *config, const char *path) {
    if (config == nullptr || path == nullptr) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, "config or path is null");
    }
    return guarded([&] {
        auto updated = config->value;
        regqpg::apply_config_text(updated, regqpg::read_text_file(path));
        config->value = std::move(updated);
    });
}

regqpg_status regqpg_config_set(regqpg_config *config, const char *key, const char *value) {
    if (config == nullptr || key == nullptr || value == nullptr) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, "config, key or value is null");
    }
    return guarded([&] { regqpg::set_config_value(config->value, key, value); });
}

regqpg_status regqpg_config_validate(const regqpg_config *config) {
    if (config == nullptr) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, "config is null");
    }
    return guarded([&] { config->value.validate(); });
}

regqpg_status regqpg_config_serialize(const regqpg_config *config, char *buffer, size_t capacity,
                                      size_t *needed) {
    if (config == nullptr || needed == nullptr) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, "config or needed is null");
    }
    return guarded([&] {
        const auto text = regqpg::serialize_config(config->value);
        *needed = text.size() + 1;
        if (buffer != nullptr && capacity >= *needed) {
            std::memcpy(buffer, text.c_str(), *needed);
        }
    });
}

regqpg_status regqpg_run(const regqpg_config *config) {
    if (config == nullptr) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, "config is null");
    }
    return guarded([&] { regqpg::run_experiment(config->value); });
}

regqpg_status regqpg_policy_load(const char *path, regqpg_policy **out) {
    if (path == nullptr || out == nullptr) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, "path or out is null");
    }
    return guarded([&] { *out = new regqpg_policy{regqpg::load_checkpoint(path)}; });
}

void regqpg_policy_destroy(regqpg_policy *policy) { delete policy; }

regqpg_status regqpg_policy_probs(const regqpg_policy *policy, const double obs[4],
                                  double probs[2]) {
    if (policy == nullptr || obs == nullptr || probs == nullptr) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, "policy, obs or probs is null");
    }
    return guarded([&] {
        const regqpg::Observation o{obs[0], obs[1], obs[2], obs[3]};
        const auto out =
            regqpg::policy_probs(policy->checkpoint.spec, policy->checkpoint.params, o);
        probs[0] = out.probs[0];
        probs[1] = out.probs[1];
    });
}

regqpg_status regqpg_policy_lipschitz(const regqpg_policy *policy, double *bound) {
    if (policy == nullptr || bound == nullptr) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, "policy or bound is null");
    }
    return guarded([&] {
        *bound = regqpg::lipschitz_bound(policy->checkpoint.spec, policy->checkpoint.params).total;
    });
}

regqpg_status regqpg_policy_seed(const regqpg_policy *policy, uint64_t *seed) {
    if (policy == nullptr || seed == nullptr) {
        return fail(REGQPG_ERR_INVALID_ARGUMENT, "policy or seed is null");
    }
    *seed = policy->checkpoint.seed;
    last_error.clear();
    return REGQPG_OK;
}

} // extern "C"
