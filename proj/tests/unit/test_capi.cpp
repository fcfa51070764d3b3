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

#include <cstdio>
#include <filesystem>
#include <string>

#include "regqpg/regqpg.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string serialize(const regqpg_config *c) {
    size_t needed = 0;
    REQUIRE(regqpg_config_serialize(c, nullptr, 0, &needed) == REGQPG_OK);
    std::string text(needed, '\0');
    REQUIRE(regqpg_config_serialize(c, text.data(), text.size(), &needed) == REGQPG_OK);
    text.resize(needed - 1);
    return text;
}

} // namespace

TEST_CASE("Version and status names", "[capi]") {
    CHECK(std::string(regqpg_version()) == "0.1.0");
    CHECK(std::string(regqpg_status_name(REGQPG_ERR_IO)) == "io");
}

TEST_CASE("Null arguments are rejected", "[capi]") {
    CHECK(regqpg_config_create(nullptr) == REGQPG_ERR_INVALID_ARGUMENT);
    CHECK(std::string(regqpg_last_error()).find("null") != std::string::npos);
    CHECK(regqpg_run(nullptr) == REGQPG_ERR_INVALID_ARGUMENT);
    CHECK(regqpg_config_set(nullptr, "seed", "1") == REGQPG_ERR_INVALID_ARGUMENT);
    CHECK(regqpg_policy_load(nullptr, nullptr) == REGQPG_ERR_INVALID_ARGUMENT);
    double b = 0.0;
    CHECK(regqpg_policy_lipschitz(nullptr, &b) == REGQPG_ERR_INVALID_ARGUMENT);
    regqpg_config_destroy(nullptr);
    regqpg_policy_destroy(nullptr);
}

TEST_CASE("Config keys are set, validated and serialized", "[capi]") {
    regqpg_config *c = nullptr;
    REQUIRE(regqpg_config_create(&c) == REGQPG_OK);
    CHECK(regqpg_config_set(c, "train.lambda", "0.25") == REGQPG_OK);
    CHECK(std::string(regqpg_last_error()).empty());
    CHECK(serialize(c).find("train.lambda = 0.25\n") != std::string::npos);

    CHECK(regqpg_config_set(c, "train.lamda", "0.1") == REGQPG_ERR_CONFIG);
    CHECK(std::string(regqpg_last_error()).find("train.lambda") != std::string::npos);
    CHECK(regqpg_config_set(c, "train.epochs", "many") == REGQPG_ERR_CONFIG);

    CHECK(regqpg_config_set(c, "n_seeds", "0") == REGQPG_OK);
    CHECK(regqpg_config_validate(c) == REGQPG_ERR_CONFIG);
    CHECK(regqpg_run(c) == REGQPG_ERR_CONFIG);
    CHECK(regqpg_config_set(c, "n_seeds", "1") == REGQPG_OK);
    CHECK(regqpg_config_validate(c) == REGQPG_OK);

    size_t needed = 0;
    char tiny[4] = {'x', 'x', 'x', 'x'};
    CHECK(regqpg_config_serialize(c, tiny, sizeof tiny, &needed) == REGQPG_OK);
    CHECK(needed > sizeof tiny);
    CHECK(tiny[0] == 'x');
    regqpg_config_destroy(c);
}

TEST_CASE("Config files load on top of the current values", "[capi]") {
    TempDir tmp("regqpg_unit_capi_load");
    regqpg_config *c = nullptr;
    REQUIRE(regqpg_config_create(&c) == REGQPG_OK);
    CHECK(regqpg_config_load_file(c, (tmp.path / "none.txt").c_str()) == REGQPG_ERR_IO);

    std::FILE *f = std::fopen((tmp.path / "cfg.txt").c_str(), "w");
    std::fputs("seed = 77\ntrain.epochs = 3\n", f);
    std::fclose(f);
    CHECK(regqpg_config_load_file(c, (tmp.path / "cfg.txt").c_str()) == REGQPG_OK);
    const auto text = serialize(c);
    CHECK(text.find("seed = 77\n") != std::string::npos);
    CHECK(text.find("train.epochs = 3\n") != std::string::npos);

    f = std::fopen((tmp.path / "bad.txt").c_str(), "w");
    std::fputs("seed = 1\nbogus.key = 2\n", f);
    std::fclose(f);
    CHECK(regqpg_config_load_file(c, (tmp.path / "bad.txt").c_str()) == REGQPG_ERR_CONFIG);
    CHECK(serialize(c).find("seed = 77\n") != std::string::npos);
    regqpg_config_destroy(c);
}

TEST_CASE("Run, then load and query a policy", "[capi]") {
    TempDir tmp("regqpg_unit_capi_run");
    regqpg_config *c = nullptr;
    REQUIRE(regqpg_config_create(&c) == REGQPG_OK);
    REQUIRE(regqpg_config_set(c, "train.epochs", "1") == REGQPG_OK);
    REQUIRE(regqpg_config_set(c, "seed", "3") == REGQPG_OK);
    REQUIRE(regqpg_config_set(c, "output_dir", tmp.path.c_str()) == REGQPG_OK);
    REQUIRE(regqpg_run(c) == REGQPG_OK);
    regqpg_config_destroy(c);

    regqpg_policy *p = nullptr;
    CHECK(regqpg_policy_load((tmp.path / "missing.txt").c_str(), &p) == REGQPG_ERR_IO);
    REQUIRE(regqpg_policy_load((tmp.path / "checkpoint_000.txt").c_str(), &p) == REGQPG_OK);
    const double obs[4] = {0.1, -0.2, 0.05, 0.3};
    double probs[2] = {0, 0};
    REQUIRE(regqpg_policy_probs(p, obs, probs) == REGQPG_OK);
    CHECK(probs[0] >= 0.0);
    CHECK(probs[1] >= 0.0);
    CHECK(std::abs(probs[0] + probs[1] - 1.0) < 1e-12);
    double bound = -1.0;
    REQUIRE(regqpg_policy_lipschitz(p, &bound) == REGQPG_OK);
    CHECK(bound > 0.0);
    uint64_t seed = 0;
    REQUIRE(regqpg_policy_seed(p, &seed) == REGQPG_OK);
    CHECK(seed != 0);
    regqpg_policy_destroy(p);
}

TEST_CASE("Runtime errors map to status codes", "[capi]") {
    TempDir tmp("regqpg_unit_capi_errors");
    regqpg_config *c = nullptr;
    REQUIRE(regqpg_config_create(&c) == REGQPG_OK);
    REQUIRE(regqpg_config_set(c, "command", "eval-robustness") == REGQPG_OK);
    REQUIRE(regqpg_config_set(c, "eval.models", (tmp.path / "nowhere").c_str()) == REGQPG_OK);
    REQUIRE(regqpg_config_set(c, "output_dir", (tmp.path / "out").c_str()) == REGQPG_OK);
    CHECK(regqpg_run(c) == REGQPG_ERR_IO);
    CHECK(std::string(regqpg_last_error()).find("nowhere") != std::string::npos);
    regqpg_config_destroy(c);
}
