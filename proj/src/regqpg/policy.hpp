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
 * @file policy.hpp
 * Two-action quantum policy: the layered ansatz with trainable input
 * encoding, action probabilities from the parity observable, log-policy
 * gradients, the Lipschitz bound of the policy and the matching penalty.
 */
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "regqpg/qsim.hpp"
#include "regqpg/rng.hpp"

namespace regqpg {

enum class EntanglerPlacement {
    BetweenLayers,   ///< L-1 entangling blocks, none after the last layer
    AfterEveryLayer, ///< L entangling blocks
};

enum class EncodingBlock {
    RzRy, ///< RZ(w0*s) then RY(w1*s)
    RzRz, ///< RZ(w0*s) then RZ(w1*s), the literal double-RZ variant
};

struct AnsatzSpec {
    std::size_t n_qubits{4};
    std::size_t n_layers{3};
    EntanglerPlacement entangler{EntanglerPlacement::BetweenLayers};
    EncodingBlock encoding{EncodingBlock::RzRy};

    /// Spectral norm of every rotation generator H_j.
    static constexpr double generator_norm = qsim::kRotationGeneratorNorm;
    /// Rotations per qubit per layer in each of the encoding/variational blocks.
    static constexpr std::size_t slots = 2;

    /// Throws ConfigError on invalid fields.
    void validate() const;
    [[nodiscard]] std::size_t tensor_size() const noexcept { return n_layers * n_qubits * slots; }

    bool operator==(const AnsatzSpec &) const = default;
};

/// Real tensor of shape [layers, qubits, 2], row-major.
class ParamTensor {
  public:
    ParamTensor() = default;
    ParamTensor(std::size_t layers, std::size_t qubits, double fill = 0.0)
        : layers_{layers}, qubits_{qubits}, values_(layers * qubits * AnsatzSpec::slots, fill) {}

    [[nodiscard]] std::size_t layers() const noexcept { return layers_; }
    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] static constexpr std::size_t index(std::size_t layer, std::size_t qubit,
                                                     std::size_t slot, std::size_t qubits) noexcept {
        return (layer * qubits + qubit) * AnsatzSpec::slots + slot;
    }

    double &at(std::size_t layer, std::size_t qubit, std::size_t slot) {
        return values_[index(layer, qubit, slot, qubits_)];
    }
    [[nodiscard]] double at(std::size_t layer, std::size_t qubit, std::size_t slot) const {
        return values_[index(layer, qubit, slot, qubits_)];
    }

    double &operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    [[nodiscard]] std::span<double> values() noexcept { return values_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    [[nodiscard]] bool same_shape(const ParamTensor &o) const noexcept {
        return layers_ == o.layers_ && qubits_ == o.qubits_;
    }

    bool operator==(const ParamTensor &) const = default;

  private:
    std::size_t layers_{0};
    std::size_t qubits_{0};
    std::vector<double> values_;
};

/// Trainable parameters: variational angles nu and encoding weights omega.
struct PolicyParams {
    ParamTensor nu;
    ParamTensor omega;

    static PolicyParams zeros(const AnsatzSpec &spec) {
        return {ParamTensor(spec.n_layers, spec.n_qubits), ParamTensor(spec.n_layers, spec.n_qubits)};
    }
    /// Throws ConfigError if shapes disagree with the ansatz or an entry is not finite.
    void validate(const AnsatzSpec &spec) const;

    bool operator==(const PolicyParams &) const = default;
};

/// Gradient tensors share the parameter layout.
using PolicyGradient = PolicyParams;

/// Projectors P0 = (I + Z⊗n)/2 and P1 = (I - Z⊗n)/2, both of spectral norm 1.
struct ObservableSpec {
    std::array<double, 2> projector_norms{1.0, 1.0};
};

struct PolicyOutput {
    std::array<double, 2> probs{0.5, 0.5};
    double expectation{0.0};
};

/// Policy output together with the parameter gradient of <Z⊗n>.
struct PolicyEvaluation {
    PolicyOutput output;
    PolicyGradient expectation_gradient;
};

struct LipschitzBound {
    std::array<double, 2> per_action{};
    double total{};
};

/// H on all qubits, then per layer the encoding and variational rotations
/// on each qubit, with CZ blocks on every qubit pair per the placement.
[[nodiscard]] std::vector<qsim::GateOp> build_circuit(const AnsatzSpec &spec,
                                                      const PolicyParams &params,
                                                      std::span<const double> obs);

[[nodiscard]] PolicyOutput policy_probs(const AnsatzSpec &spec, const PolicyParams &params,
                                        std::span<const double> obs);

[[nodiscard]] PolicyEvaluation evaluate_with_gradient(const AnsatzSpec &spec,
                                                      const PolicyParams &params,
                                                      std::span<const double> obs);

/// ∇ log π(action|s) from a precomputed evaluation.
[[nodiscard]] PolicyGradient log_policy_gradient(const PolicyEvaluation &eval, int action);

[[nodiscard]] PolicyGradient grad_log_policy(const AnsatzSpec &spec, const PolicyParams &params,
                                             std::span<const double> obs, int action);

[[nodiscard]] LipschitzBound lipschitz_bound(const AnsatzSpec &spec, const PolicyParams &params,
                                             const ObservableSpec &obs_spec = {});

/// λ Σ ω² ‖H‖².
[[nodiscard]] double regularization_penalty(const PolicyParams &params, double lambda);

/// Derivative of regularization_penalty() with respect to omega.
[[nodiscard]] ParamTensor regularization_gradient(const PolicyParams &params, double lambda);

/**
 * @brief Largest ‖π(·|x) - π(·|x')‖₁ / ‖x - x'‖₂ over n_pairs pairs drawn
 * uniformly from [-1, 1]^n.
 */
[[nodiscard]] double empirical_lipschitz_check(const AnsatzSpec &spec, const PolicyParams &params,
                                               std::size_t n_pairs, SplitMix64 &rng);

} // namespace regqpg
