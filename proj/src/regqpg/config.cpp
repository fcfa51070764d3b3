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
#include "regqpg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "regqpg/errors.hpp"

namespace regqpg {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
    throw ConfigError(std::string(key) + ": invalid value '" + std::string(value) + "' (" +
                      std::string(what) + ")");
}

double to_double(std::string_view key, std::string_view v) {
    v = trim(v);
    double out = 0.0;
    const auto *end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end || v.empty() || !std::isfinite(out)) {
        bad_value(key, v, "expected a finite real number");
    }
    return out;
}

template <class Int> Int to_int(std::string_view key, std::string_view v) {
    v = trim(v);
    Int out{};
    const auto *end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end || v.empty()) {
        bad_value(key, v, "expected an integer");
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view v) {
    v = trim(v);
    if (v == "true" || v == "1") {
        return true;
    }
    if (v == "false" || v == "0") {
        return false;
    }
    bad_value(key, v, "expected true or false");
}

Interval to_interval(std::string_view key, std::string_view v) {
    const auto parts = split(v, ':');
    if (parts.size() != 2) {
        bad_value(key, v, "expected lo:hi");
    }
    return {to_double(key, parts[0]), to_double(key, parts[1])};
}

std::vector<Interval> to_intervals(std::string_view key, std::string_view v) {
    std::vector<Interval> out;
    if (trim(v).empty()) {
        return out;
    }
    for (const auto part : split(v, ',')) {
        out.push_back(to_interval(key, part));
    }
    return out;
}

std::vector<double> to_doubles(std::string_view key, std::string_view v) {
    std::vector<double> out;
    if (trim(v).empty()) {
        return out;
    }
    for (const auto part : split(v, ',')) {
        out.push_back(to_double(key, part));
    }
    return out;
}

std::string from_interval(const Interval &iv) { return format_double(iv.lo) + ":" + format_double(iv.hi); }

std::string from_intervals(const std::vector<Interval> &ivs) {
    std::string out;
    for (std::size_t i = 0; i < ivs.size(); ++i) {
        out += (i ? "," : "") + from_interval(ivs[i]);
    }
    return out;
}

std::string from_doubles(std::span<const double> vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        out += (i ? "," : "") + format_double(vs[i]);
    }
    return out;
}

template <class Enum>
Enum to_enum(std::string_view key, std::string_view v,
             std::initializer_list<std::pair<std::string_view, Enum>> names) {
    v = trim(v);
    std::string options;
    for (const auto &[name, value] : names) {
        if (name == v) {
            return value;
        }
        options += (options.empty() ? "" : ", ") + std::string(name);
    }
    bad_value(key, v, "expected one of: " + options);
}

template <class Enum>
std::string from_enum(Enum e, std::initializer_list<std::pair<std::string_view, Enum>> names) {
    for (const auto &[name, value] : names) {
        if (value == e) {
            return std::string(name);
        }
    }
    return {};
}

const std::initializer_list<std::pair<std::string_view, EntanglerPlacement>> kEntanglerNames{
    {"between_layers", EntanglerPlacement::BetweenLayers},
    {"after_every_layer", EntanglerPlacement::AfterEveryLayer}};
const std::initializer_list<std::pair<std::string_view, EncodingBlock>> kEncodingNames{
    {"rz_ry", EncodingBlock::RzRy}, {"rz_rz", EncodingBlock::RzRz}};
const std::initializer_list<std::pair<std::string_view, Optimizer>> kOptimizerNames{
    {"adam", Optimizer::AdaptiveMoment}, {"vanilla", Optimizer::VanillaAscent}};
const std::initializer_list<std::pair<std::string_view, ReturnScaling>> kScalingNames{
    {"raw", ReturnScaling::Raw}, {"standardize", ReturnScaling::Standardize}};

struct KeyDef {
    std::string key;
    std::function<void(ExperimentConfig &, std::string_view, std::string_view)> set;
    std::function<std::string(const ExperimentConfig &)> get;
};

#define REGQPG_KEY(name, setter, getter)                                                          \
    KeyDef {                                                                                      \
        name, [](ExperimentConfig &c, std::string_view k, std::string_view v) { setter; },        \
            [](const ExperimentConfig &c) -> std::string { return getter; }                       \
    }

const std::vector<KeyDef> &registry() {
    static const std::vector<KeyDef> keys{
        REGQPG_KEY("command", c.command = parse_command(trim(v)); (void)k,
                   std::string(to_string(c.command))),
        REGQPG_KEY("seed", c.seed = to_int<std::uint64_t>(k, v), std::to_string(c.seed)),
        REGQPG_KEY("n_seeds", c.n_seeds = to_int<int>(k, v), std::to_string(c.n_seeds)),
        REGQPG_KEY("workers", c.workers = to_int<int>(k, v), std::to_string(c.workers)),
        REGQPG_KEY("output_dir", c.output_dir = std::string(trim(v)); (void)k, c.output_dir),

        REGQPG_KEY("ansatz.n_qubits", c.ansatz.n_qubits = to_int<std::size_t>(k, v),
                   std::to_string(c.ansatz.n_qubits)),
        REGQPG_KEY("ansatz.n_layers", c.ansatz.n_layers = to_int<std::size_t>(k, v),
                   std::to_string(c.ansatz.n_layers)),
        REGQPG_KEY("ansatz.entangler", c.ansatz.entangler = to_enum(k, v, kEntanglerNames),
                   from_enum(c.ansatz.entangler, kEntanglerNames)),
        REGQPG_KEY("ansatz.encoding", c.ansatz.encoding = to_enum(k, v, kEncodingNames),
                   from_enum(c.ansatz.encoding, kEncodingNames)),

        REGQPG_KEY("train.epochs", c.train.epochs = to_int<int>(k, v), std::to_string(c.train.epochs)),
        REGQPG_KEY("train.batch_size", c.train.batch_size = to_int<int>(k, v),
                   std::to_string(c.train.batch_size)),
        REGQPG_KEY("train.learning_rate", c.train.learning_rate = to_double(k, v),
                   format_double(c.train.learning_rate)),
        REGQPG_KEY("train.gamma", c.train.gamma = to_double(k, v), format_double(c.train.gamma)),
        REGQPG_KEY("train.lambda", c.train.lambda = to_double(k, v), format_double(c.train.lambda)),
        REGQPG_KEY("train.optimizer", c.train.optimizer = to_enum(k, v, kOptimizerNames),
                   from_enum(c.train.optimizer, kOptimizerNames)),
        REGQPG_KEY("train.baseline", c.train.baseline = to_bool(k, v),
                   c.train.baseline ? "true" : "false"),
        REGQPG_KEY("train.return_scaling", c.train.return_scaling = to_enum(k, v, kScalingNames),
                   from_enum(c.train.return_scaling, kScalingNames)),
        REGQPG_KEY("train.per_step_mean", c.train.per_step_mean = to_bool(k, v),
                   c.train.per_step_mean ? "true" : "false"),

        REGQPG_KEY("env.init.x", c.init.x = to_interval(k, v), from_interval(c.init.x)),
        REGQPG_KEY("env.init.x_dot", c.init.x_dot = to_interval(k, v), from_interval(c.init.x_dot)),
        REGQPG_KEY("env.init.theta", c.init.theta = to_interval(k, v), from_interval(c.init.theta)),
        REGQPG_KEY("env.init.theta_dot", c.init.theta_dot = to_interval(k, v),
                   from_interval(c.init.theta_dot)),

        REGQPG_KEY("curriculum.theta_dot_ranges", c.curriculum_theta_dot = to_intervals(k, v),
                   from_intervals(c.curriculum_theta_dot)),
        REGQPG_KEY("curriculum.f_max", c.f_max = to_int<int>(k, v), std::to_string(c.f_max)),
        REGQPG_KEY("curriculum.validation_episodes", c.validation_episodes = to_int<int>(k, v),
                   std::to_string(c.validation_episodes)),
        REGQPG_KEY("curriculum.validation_threshold", c.validation_threshold = to_double(k, v),
                   format_double(c.validation_threshold)),
        REGQPG_KEY("curriculum.validation_period", c.validation_period = to_int<int>(k, v),
                   std::to_string(c.validation_period)),
        REGQPG_KEY("curriculum.max_episodes", c.max_episodes = to_int<long>(k, v),
                   std::to_string(c.max_episodes)),

        REGQPG_KEY("eval.sigmas", c.sigmas = to_doubles(k, v), from_doubles(c.sigmas)),
        REGQPG_KEY("eval.episodes", c.robustness_episodes = to_int<int>(k, v),
                   std::to_string(c.robustness_episodes)),
        REGQPG_KEY("eval.angle_bins", c.grid.angle_bins = to_intervals(k, v),
                   from_intervals(c.grid.angle_bins)),
        REGQPG_KEY("eval.velocity_bins", c.grid.velocity_bins = to_intervals(k, v),
                   from_intervals(c.grid.velocity_bins)),
        REGQPG_KEY("eval.episodes_per_cell", c.grid.episodes_per_cell = to_int<int>(k, v),
                   std::to_string(c.grid.episodes_per_cell)),
        REGQPG_KEY("eval.mirror_velocity", c.grid.mirror_velocity = to_bool(k, v),
                   c.grid.mirror_velocity ? "true" : "false"),
        REGQPG_KEY("eval.models", c.models_dir = std::string(trim(v)); (void)k, c.models_dir),
    };
    return keys;
}

#undef REGQPG_KEY

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1] ? 1U : 0U)});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string suggestion_for(std::string_view key) {
    std::string best;
    std::size_t best_d = 4;
    for (const auto &def : registry()) {
        const auto d = std::min(edit_distance(key, def.key),
                                // match on the last path component too: "lamda" -> train.lambda
                                edit_distance(key, std::string_view(def.key).substr(def.key.rfind('.') + 1)));
        if (d < best_d) {
            best_d = d;
            best = def.key;
        }
    }
    return best;
}

} // namespace

std::string format_double(double v) {
    if (v == 0.0) {
        return "0"; // avoids "-0"
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string_view to_string(Command c) noexcept {
    switch (c) {
    case Command::Train:
        return "train";
    case Command::Curriculum:
        return "curriculum";
    case Command::EvalRobustness:
        return "eval-robustness";
    case Command::EvalGeneralization:
        return "eval-generalization";
    }
    return "train";
}

Command parse_command(std::string_view s) {
    for (const auto c : {Command::Train, Command::Curriculum, Command::EvalRobustness,
                         Command::EvalGeneralization}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw ConfigError("command: unknown command '" + std::string(s) +
                      "' (expected train, curriculum, eval-robustness or eval-generalization)");
}

CurriculumSchedule ExperimentConfig::schedule() const {
    CurriculumSchedule s;
    s.ranges.clear();
    for (const auto &iv : curriculum_theta_dot) {
        InitRanges r = init;
        r.theta_dot = iv;
        s.ranges.push_back(r);
    }
    s.f_max = f_max;
    s.validation_episodes = validation_episodes;
    s.validation_threshold = validation_threshold;
    s.validation_period = validation_period;
    s.max_episodes = max_episodes;
    return s;
}

void ExperimentConfig::validate() const {
    if (n_seeds < 1) {
        throw ConfigError("n_seeds: must be >= 1");
    }
    if (workers < 1) {
        throw ConfigError("workers: must be >= 1");
    }
    ansatz.validate();
    if (ansatz.n_qubits != 4) {
        throw ConfigError("ansatz.n_qubits: the cart-pole observation needs exactly 4 qubits");
    }
    train.validate();
    try {
        init.validate();
    } catch (const ConfigError &e) {
        throw ConfigError(std::string("env.init: ") + e.what());
    }
    try {
        schedule().validate();
    } catch (const ConfigError &e) {
        throw ConfigError(std::string("curriculum: ") + e.what());
    }
    if (sigmas.empty()) {
        throw ConfigError("eval.sigmas: must not be empty");
    }
    for (const double s : sigmas) {
        if (!(s >= 0.0)) {
            throw ConfigError("eval.sigmas: noise levels must be >= 0");
        }
    }
    if (robustness_episodes < 1) {
        throw ConfigError("eval.episodes: must be >= 1");
    }
    grid.validate();
}

const std::vector<std::string> &config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto &def : registry()) {
            out.push_back(def.key);
        }
        return out;
    }();
    return keys;
}

void set_config_value(ExperimentConfig &config, std::string_view key, std::string_view value) {
    key = trim(key);
    for (const auto &def : registry()) {
        if (def.key == key) {
            def.set(config, key, value);
            return;
        }
    }
    std::string msg = "unknown config key '" + std::string(key) + "'";
    if (const auto hint = suggestion_for(key); !hint.empty()) {
        msg += "; did you mean '" + hint + "'?";
    }
    throw ConfigError(msg);
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        const auto raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        ++line_no;
        const auto line = trim(raw);
        if (!line.empty() && line.front() != '#') {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
            }
            const auto key = trim(line.substr(0, eq));
            if (key.empty()) {
                throw ConfigError("line " + std::to_string(line_no) + ": empty key");
            }
            out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
        }
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return out;
}

void apply_config_text(ExperimentConfig &config, std::string_view text) {
    std::map<std::string, std::size_t> seen;
    for (const auto &[key, value] : parse_key_values(text)) {
        if (key.starts_with("manifest.")) {
            continue;
        }
        if (seen[key]++ > 0) {
            throw ConfigError(key + ": key given more than once");
        }
        set_config_value(config, key, value);
    }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
    apply_config_text(base, text);
    base.validate();
    return base;
}

ExperimentConfig load_config_file(const std::filesystem::path &path, ExperimentConfig base) {
    return parse_config(read_text_file(path), std::move(base));
}

std::string serialize_config(const ExperimentConfig &config) {
    std::string out;
    for (const auto &def : registry()) {
        out += def.key + " = " + def.get(config) + "\n";
    }
    return out;
}

std::string serialize_checkpoint(const Checkpoint &ckpt) {
    std::string out = "# regqpg policy checkpoint; tensors are row-major [layer, qubit, slot]\n";
    out += "format = regqpg-checkpoint-1\n";
    out += "ansatz.n_qubits = " + std::to_string(ckpt.spec.n_qubits) + "\n";
    out += "ansatz.n_layers = " + std::to_string(ckpt.spec.n_layers) + "\n";
    out += "ansatz.entangler = " + from_enum(ckpt.spec.entangler, kEntanglerNames) + "\n";
    out += "ansatz.encoding = " + from_enum(ckpt.spec.encoding, kEncodingNames) + "\n";
    out += "train.lambda = " + format_double(ckpt.lambda) + "\n";
    out += "seed = " + std::to_string(ckpt.seed) + "\n";
    out += "nu = " + from_doubles(ckpt.params.nu.values()) + "\n";
    out += "omega = " + from_doubles(ckpt.params.omega.values()) + "\n";
    return out;
}

Checkpoint parse_checkpoint(std::string_view text) {
    std::map<std::string, std::string> kv;
    for (auto &[k, v] : parse_key_values(text)) {
        if (!kv.emplace(k, v).second) {
            throw ConfigError("checkpoint: duplicate key '" + k + "'");
        }
    }
    const auto take = [&](const std::string &key) {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            throw ConfigError("checkpoint: missing key '" + key + "'");
        }
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    if (take("format") != "regqpg-checkpoint-1") {
        throw ConfigError("checkpoint: unsupported format");
    }
    Checkpoint c;
    c.spec.n_qubits = to_int<std::size_t>("ansatz.n_qubits", take("ansatz.n_qubits"));
    c.spec.n_layers = to_int<std::size_t>("ansatz.n_layers", take("ansatz.n_layers"));
    c.spec.entangler = to_enum("ansatz.entangler", take("ansatz.entangler"), kEntanglerNames);
    c.spec.encoding = to_enum("ansatz.encoding", take("ansatz.encoding"), kEncodingNames);
    c.spec.validate();
    c.lambda = to_double("train.lambda", take("train.lambda"));
    c.seed = to_int<std::uint64_t>("seed", take("seed"));
    c.params = PolicyParams::zeros(c.spec);
    for (auto [key, tensor] : {std::pair{"nu", &c.params.nu}, std::pair{"omega", &c.params.omega}}) {
        const auto values = to_doubles(key, take(key));
        if (values.size() != tensor->size()) {
            throw ConfigError(std::string("checkpoint: ") + key + " has " + std::to_string(values.size()) +
                              " entries, ansatz needs " + std::to_string(tensor->size()));
        }
        std::copy(values.begin(), values.end(), tensor->values().begin());
    }
    if (!kv.empty()) {
        throw ConfigError("checkpoint: unknown key '" + kv.begin()->first + "'");
    }
    return c;
}

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt) {
    write_text_file(path, serialize_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    try {
        return parse_checkpoint(read_text_file(path));
    } catch (const ConfigError &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

} // namespace regqpg
