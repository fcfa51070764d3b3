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
#include "regqpg/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "regqpg/errors.hpp"

namespace regqpg {

using qsim::EncodedAngle;
using qsim::GateOp;
using qsim::VariationalAngle;

void AnsatzSpec::validate() const {
    if (n_qubits == 0 || n_qubits > 20) {
        throw ConfigError("ansatz.n_qubits must be in [1, 20], got " + std::to_string(n_qubits));
    }
    if (n_layers == 0) {
        throw ConfigError("ansatz.n_layers must be >= 1");
    }
}

void PolicyParams::validate(const AnsatzSpec &spec) const {
    for (const auto *t : {&nu, &omega}) {
        if (t->layers() != spec.n_layers || t->qubits() != spec.n_qubits) {
            throw ConfigError("parameter tensor shape [" + std::to_string(t->layers()) + ", " +
                              std::to_string(t->qubits()) + ", 2] does not match ansatz [" +
                              std::to_string(spec.n_layers) + ", " +
                              std::to_string(spec.n_qubits) + ", 2]");
        }
        for (const double v : t->values()) {
            if (!std::isfinite(v)) {
                throw ConfigError("parameter tensor holds a non-finite entry");
            }
        }
    }
}

std::vector<GateOp> build_circuit(const AnsatzSpec &spec, const PolicyParams &params,
                                  std::span<const double> obs) {
    params.validate(spec);
    if (obs.size() != spec.n_qubits) {
        throw ConfigError("observation has " + std::to_string(obs.size()) +
                          " features, ansatz expects " + std::to_string(spec.n_qubits));
    }
    const std::size_t n = spec.n_qubits;
    const std::size_t pairs = n * (n - 1) / 2;
    const std::size_t blocks =
        spec.entangler == EntanglerPlacement::BetweenLayers ? spec.n_layers - 1 : spec.n_layers;

    std::vector<GateOp> gates;
    gates.reserve(n + spec.n_layers * n * 4 + blocks * pairs);
    for (std::size_t q = 0; q < n; ++q) {
        gates.push_back(GateOp::h(q));
    }
    for (std::size_t j = 0; j < spec.n_layers; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double s = obs[i];
            gates.push_back(GateOp::rz(i, params.omega.at(j, i, 0) * s, EncodedAngle{j, i, 0, i}));
            const double a1 = params.omega.at(j, i, 1) * s;
            gates.push_back(spec.encoding == EncodingBlock::RzRy
                                ? GateOp::ry(i, a1, EncodedAngle{j, i, 1, i})
                                : GateOp::rz(i, a1, EncodedAngle{j, i, 1, i}));
            gates.push_back(GateOp::rz(i, params.nu.at(j, i, 0), VariationalAngle{j, i, 0}));
            gates.push_back(GateOp::ry(i, params.nu.at(j, i, 1), VariationalAngle{j, i, 1}));
        }
        const bool last = j + 1 == spec.n_layers;
        if (!last || spec.entangler == EntanglerPlacement::AfterEveryLayer) {
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a + 1; b < n; ++b) {
                    gates.push_back(GateOp::cz(a, b));
                }
            }
        }
    }
    return gates;
}

namespace {

PolicyOutput output_from_expectation(double e) {
    e = std::clamp(e, -1.0, 1.0);
    PolicyOutput out;
    out.expectation = e;
    out.probs[0] = (e + 1.0) / 2.0;
    out.probs[1] = 1.0 - out.probs[0];
    return out;
}

} // namespace

PolicyOutput policy_probs(const AnsatzSpec &spec, const PolicyParams &params,
                          std::span<const double> obs) {
    const auto gates = build_circuit(spec, params, obs);
    return output_from_expectation(qsim::expectation_z_all(qsim::run_circuit(gates, spec.n_qubits)));
}

PolicyEvaluation evaluate_with_gradient(const AnsatzSpec &spec, const PolicyParams &params,
                                        std::span<const double> obs) {
    const auto gates = build_circuit(spec, params, obs);
    const auto adj = qsim::adjoint_gradient_z_expectation(gates, spec.n_qubits);

    PolicyEvaluation eval{output_from_expectation(adj.value), PolicyParams::zeros(spec)};
    std::size_t r = 0;
    for (const auto &g : gates) {
        if (!g.is_rotation()) {
            continue;
        }
        const double d = adj.gradient[r++];
        if (const auto *v = std::get_if<VariationalAngle>(&g.source)) {
            eval.expectation_gradient.nu.at(v->layer, v->qubit, v->slot) += d;
        } else if (const auto *w = std::get_if<EncodedAngle>(&g.source)) {
            // angle = omega * s[feature]
            eval.expectation_gradient.omega.at(w->layer, w->qubit, w->slot) += d * obs[w->feature];
        }
    }
    return eval;
}

PolicyGradient log_policy_gradient(const PolicyEvaluation &eval, int action) {
    if (action != 0 && action != 1) {
        throw UsageError("action must be 0 or 1");
    }
    const double p = eval.output.probs[static_cast<std::size_t>(action)];
    if (p < 1e-12) {
        throw DegeneratePolicyError("policy probability of action " + std::to_string(action) +
                                    " is below 1e-12");
    }
    // π(a|s) = ((-1)^a e + 1) / 2  =>  ∇ log π = (-1)^a ∇e / (2 π)
    const double scale = (action == 0 ? 1.0 : -1.0) / (2.0 * p);
    PolicyGradient g = eval.expectation_gradient;
    for (auto *t : {&g.nu, &g.omega}) {
        for (double &v : t->values()) {
            v *= scale;
        }
    }
    return g;
}

PolicyGradient grad_log_policy(const AnsatzSpec &spec, const PolicyParams &params,
                               std::span<const double> obs, int action) {
    return log_policy_gradient(evaluate_with_gradient(spec, params, obs), action);
}

LipschitzBound lipschitz_bound(const AnsatzSpec & /*spec*/, const PolicyParams &params,
                               const ObservableSpec &obs_spec) {
    // Every encoding rotation is one exp(-i ω s_i H) factor with a one-hot
    // weight vector, so ‖ω_j‖ = |ω_{j,i,k}|.
    double weight_sum = 0.0;
    for (const double w : params.omega.values()) {
        weight_sum += std::abs(w) * AnsatzSpec::generator_norm;
    }
    LipschitzBound b;
    for (std::size_t a = 0; a < 2; ++a) {
        b.per_action[a] = 2.0 * obs_spec.projector_norms[a] * weight_sum;
        b.total += b.per_action[a];
    }
    return b;
}

double regularization_penalty(const PolicyParams &params, double lambda) {
    if (!(lambda >= 0.0)) {
        throw ConfigError("regularization rate lambda must be >= 0");
    }
    constexpr double h2 = AnsatzSpec::generator_norm * AnsatzSpec::generator_norm;
    double acc = 0.0;
    for (const double w : params.omega.values()) {
        acc += w * w * h2;
    }
    return lambda * acc;
}

ParamTensor regularization_gradient(const PolicyParams &params, double lambda) {
    if (!(lambda >= 0.0)) {
        throw ConfigError("regularization rate lambda must be >= 0");
    }
    constexpr double h2 = AnsatzSpec::generator_norm * AnsatzSpec::generator_norm;
    ParamTensor g = params.omega;
    for (double &v : g.values()) {
        v *= 2.0 * lambda * h2;
    }
    return g;
}

double empirical_lipschitz_check(const AnsatzSpec &spec, const PolicyParams &params,
                                 std::size_t n_pairs, SplitMix64 &rng) {
    if (n_pairs == 0) {
        throw UsageError("empirical_lipschitz_check needs at least one pair");
    }
    const std::size_t n = spec.n_qubits;
    std::vector<double> x(n);
    std::vector<double> y(n);
    double worst = 0.0;
    for (std::size_t k = 0; k < n_pairs; ++k) {
        double dist2 = 0.0;
        do {
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = uniform(rng, -1.0, 1.0);
                y[i] = uniform(rng, -1.0, 1.0);
            }
            dist2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                dist2 += (x[i] - y[i]) * (x[i] - y[i]);
            }
        } while (dist2 == 0.0);
        const auto px = policy_probs(spec, params, x);
        const auto py = policy_probs(spec, params, y);
        const double l1 = std::abs(px.probs[0] - py.probs[0]) + std::abs(px.probs[1] - py.probs[1]);
        worst = std::max(worst, l1 / std::sqrt(dist2));
    }
    return worst;
}

} // namespace regqpg
