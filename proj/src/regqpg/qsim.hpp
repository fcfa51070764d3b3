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
 * @file qsim.hpp
 * Dense statevector simulator for the gate set used by the policy ansatz
 * (RY, RZ, H, CZ), the Z⊗...⊗Z expectation value and its gradient with
 * respect to every rotation angle.
 *
 * Conventions: RY(φ) = exp(-iφY/2), RZ(φ) = exp(-iφZ/2). Qubit q corresponds
 * to bit q of the basis-state index.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace regqpg::qsim {

using Complex = std::complex<double>;

/// Spectral norm of the generator of every rotation gate.
inline constexpr double kRotationGeneratorNorm = 0.5;

enum class GateKind { RY, RZ, H, CZ };

/// Angle fixed by a variational parameter nu[layer, qubit, slot].
struct VariationalAngle {
    std::size_t layer{};
    std::size_t qubit{};
    std::size_t slot{};
    bool operator==(const VariationalAngle &) const = default;
};

/// Angle omega[layer, qubit, slot] * s[feature].
struct EncodedAngle {
    std::size_t layer{};
    std::size_t qubit{};
    std::size_t slot{};
    std::size_t feature{};
    bool operator==(const EncodedAngle &) const = default;
};

using AngleSource = std::variant<std::monostate, VariationalAngle, EncodedAngle>;

/**
 * @brief One gate of a circuit. Rotations carry an angle and (optionally) the
 * parameter it was computed from; CZ carries a control qubit.
 */
struct GateOp {
    GateKind kind{GateKind::H};
    std::size_t target{};
    std::optional<std::size_t> control{};
    double angle{};
    AngleSource source{};

    [[nodiscard]] bool is_rotation() const noexcept {
        return kind == GateKind::RY || kind == GateKind::RZ;
    }

    static GateOp ry(std::size_t target, double angle, AngleSource src = {}) {
        return {GateKind::RY, target, std::nullopt, angle, src};
    }
    static GateOp rz(std::size_t target, double angle, AngleSource src = {}) {
        return {GateKind::RZ, target, std::nullopt, angle, src};
    }
    static GateOp h(std::size_t target) { return {GateKind::H, target, std::nullopt, 0.0, {}}; }
    static GateOp cz(std::size_t control, std::size_t target) {
        return {GateKind::CZ, target, control, 0.0, {}};
    }
};

/// Throws InvalidGateError unless the gate is well formed for n_qubits.
void validate_gate(const GateOp &gate, std::size_t n_qubits);

/**
 * @brief Pure state of n qubits stored as 2^n double-precision amplitudes.
 * Starts in |0...0>.
 */
class Statevector {
  public:
    explicit Statevector(std::size_t n_qubits);

    /// Takes ownership of explicit amplitudes; size must be a power of two.
    static Statevector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] double norm() const noexcept;

    void apply(const GateOp &gate);
    /// Applies the inverse of the gate.
    void apply_adjoint(const GateOp &gate);
    void apply_hadamard_all();
    /// Multiplies in place by the observable Z⊗...⊗Z.
    void apply_z_all();
    /// Multiplies in place by -i G, G the generator of the rotation gate.
    void apply_generator(const GateOp &gate);

    bool operator==(const Statevector &) const = default;

  private:
    Statevector(std::size_t n_qubits, std::vector<Complex> amps)
        : n_qubits_{n_qubits}, amps_{std::move(amps)} {}

    void apply_rotation(GateKind kind, std::size_t target, double angle);

    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

/// Returns the gate-evolved state.
[[nodiscard]] Statevector apply_gate(Statevector state, const GateOp &gate);

[[nodiscard]] Statevector apply_hadamard_all(Statevector state);

/// <psi| Z⊗...⊗Z |psi>.
[[nodiscard]] double expectation_z_all(const Statevector &state);

/// |0...0> evolved through the gates in order.
[[nodiscard]] Statevector run_circuit(std::span<const GateOp> gates, std::size_t n_qubits);

struct ExpectationWithGradient {
    double value{};
    /// One entry per rotation gate, in circuit order.
    std::vector<double> gradient;
};

/**
 * @brief <Z⊗n> and its derivative with respect to every rotation angle by a
 * single reverse sweep over the circuit (adjoint method).
 */
[[nodiscard]] ExpectationWithGradient
adjoint_gradient_z_expectation(std::span<const GateOp> gates, std::size_t n_qubits);

/// Gradient part of adjoint_gradient_z_expectation().
[[nodiscard]] std::vector<double> gradient_z_expectation(std::span<const GateOp> gates,
                                                         std::size_t n_qubits);

/// Parameter-shift gradient, one entry per rotation gate. Cross-check path.
[[nodiscard]] std::vector<double>
parameter_shift_gradient_z_expectation(std::span<const GateOp> gates, std::size_t n_qubits);

} // namespace regqpg::qsim
