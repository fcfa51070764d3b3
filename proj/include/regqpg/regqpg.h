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
 * @file regqpg.h
 * C interface to the regqpg library.
 *
 * All functions returning regqpg_status leave a message retrievable with
 * regqpg_last_error() on failure. Handles are opaque and owned by the caller.
 */
#pragma once

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define REGQPG_API __declspec(dllexport)
#else
#define REGQPG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum regqpg_status {
    REGQPG_OK = 0,
    REGQPG_ERR_INVALID_ARGUMENT = 1, /**< null handle or malformed argument */
    REGQPG_ERR_CONFIG = 2,           /**< unknown key, bad value, inconsistent config */
    REGQPG_ERR_IO = 3,               /**< file missing, unreadable or unwritable */
    REGQPG_ERR_RUNTIME = 4,          /**< failure during a run */
    REGQPG_ERR_DEGENERATE = 5        /**< policy probability underflow */
} regqpg_status;

typedef struct regqpg_config regqpg_config;
typedef struct regqpg_policy regqpg_policy;

/** @brief Library version string, e.g. "0.1.0". */
REGQPG_API const char *regqpg_version(void);

/** @brief Message of the last failed call on this thread ("" if none). */
REGQPG_API const char *regqpg_last_error(void);

/** @brief Short name of a status code. */
REGQPG_API const char *regqpg_status_name(regqpg_status status);

/** @brief Creates a config holding the defaults. */
REGQPG_API regqpg_status regqpg_config_create(regqpg_config **out);

REGQPG_API void regqpg_config_destroy(regqpg_config *config);

/**
 * @brief Applies every `key = value` line of a file on top of the config.
 * The result is validated only when it is run or by regqpg_config_validate().
 */
REGQPG_API regqpg_status regqpg_config_load_file(regqpg_config *config, const char *path);

/** @brief Sets a single key; `value` uses the config file syntax. */
REGQPG_API regqpg_status regqpg_config_set(regqpg_config *config, const char *key,
                                           const char *value);

REGQPG_API regqpg_status regqpg_config_validate(const regqpg_config *config);

/**
 * @brief Writes the config in file syntax.
 *
 * `*needed` receives the size including the terminating NUL. With a null or
 * short buffer nothing is written and REGQPG_OK is still returned, so the
 * call can be repeated with a buffer of `*needed` bytes.
 */
REGQPG_API regqpg_status regqpg_config_serialize(const regqpg_config *config, char *buffer,
                                                 size_t capacity, size_t *needed);

/** @brief Validates the config and runs its command, writing to output_dir. */
REGQPG_API regqpg_status regqpg_run(const regqpg_config *config);

/** @brief Loads a checkpoint file written by a train or curriculum run. */
REGQPG_API regqpg_status regqpg_policy_load(const char *path, regqpg_policy **out);

REGQPG_API void regqpg_policy_destroy(regqpg_policy *policy);

/** @brief Action probabilities for a normalized 4-feature observation. */
REGQPG_API regqpg_status regqpg_policy_probs(const regqpg_policy *policy, const double obs[4],
                                             double probs[2]);

/** @brief Upper bound on the Lipschitz constant of the policy. */
REGQPG_API regqpg_status regqpg_policy_lipschitz(const regqpg_policy *policy, double *bound);

/** @brief Seed stored with the checkpoint. */
REGQPG_API regqpg_status regqpg_policy_seed(const regqpg_policy *policy, uint64_t *seed);

#ifdef __cplusplus
}
#endif
