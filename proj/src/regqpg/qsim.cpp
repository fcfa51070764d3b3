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
#include "regqpg/qsim.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "regqpg/errors.hpp"

namespace regqpg::qsim {

namespace {

constexpr std::size_t kMaxQubits = 24;

// (re + i im) * (c - i s)
inline Complex rotate_phase(const Complex &a, double c, double s) noexcept {
    return {a.real() * c + a.imag() * s, a.imag() * c - a.real() * s};
}

} // namespace

void validate_gate(const GateOp &gate, std::size_t n_qubits) {
    if (gate.target >= n_qubits) {
        throw InvalidGateError("gate target " + std::to_string(gate.target) +
                               " out of range for " + std::to_string(n_qubits) + " qubits");
    }
    if (gate.kind == GateKind::CZ) {
        if (!gate.control) {
            throw InvalidGateError("CZ gate without control qubit");
        }
        if (*gate.control >= n_qubits) {
            throw InvalidGateError("CZ control " + std::to_string(*gate.control) +
                                   " out of range for " + std::to_string(n_qubits) + " qubits");
        }
        if (*gate.control == gate.target) {
            throw InvalidGateError("CZ control equals target");
        }
    } else if (gate.control) {
        throw InvalidGateError("only CZ gates carry a control qubit");
    }
    if (!gate.is_rotation() && !std::holds_alternative<std::monostate>(gate.source)) {
        throw InvalidGateError("non-rotation gate with an angle source");
    }
    if (gate.is_rotation() && !std::isfinite(gate.angle)) {
        throw InvalidGateError("rotation angle is not finite");
    }
}

Statevector::Statevector(std::size_t n_qubits) : n_qubits_{n_qubits} {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw InvalidGateError("unsupported qubit count " + std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = Complex{1.0, 0.0};
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
    const auto dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw InvalidGateError("amplitude count must be a power of two >= 2");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    return Statevector{n, std::move(amplitudes)};
}

double Statevector::norm() const noexcept {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

void Statevector::apply_rotation(GateKind kind, std::size_t target, double angle) {
    const std::size_t mask = std::size_t{1} << target;
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::size_t dim = amps_.size();
    if (kind == GateKind::RY) {
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & mask) != 0U) {
                continue;
            }
            const Complex a0 = amps_[i];
            const Complex a1 = amps_[i | mask];
            amps_[i] = {c * a0.real() - s * a1.real(), c * a0.imag() - s * a1.imag()};
            amps_[i | mask] = {s * a0.real() + c * a1.real(), s * a0.imag() + c * a1.imag()};
        }
    } else {
        for (std::size_t i = 0; i < dim; ++i) {
            // bit 0 picks up exp(-iφ/2), bit 1 exp(+iφ/2)
            amps_[i] = rotate_phase(amps_[i], c, (i & mask) != 0U ? -s : s);
        }
    }
}

void Statevector::apply(const GateOp &gate) {
    validate_gate(gate, n_qubits_);
    const std::size_t dim = amps_.size();
    switch (gate.kind) {
    case GateKind::RY:
    case GateKind::RZ:
        apply_rotation(gate.kind, gate.target, gate.angle);
        break;
    case GateKind::H: {
        const std::size_t mask = std::size_t{1} << gate.target;
        const double r = std::numbers::sqrt2 / 2.0;
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & mask) != 0U) {
                continue;
            }
            const Complex a0 = amps_[i];
            const Complex a1 = amps_[i | mask];
            amps_[i] = {r * (a0.real() + a1.real()), r * (a0.imag() + a1.imag())};
            amps_[i | mask] = {r * (a0.real() - a1.real()), r * (a0.imag() - a1.imag())};
        }
        break;
    }
    case GateKind::CZ: {
        const std::size_t both = (std::size_t{1} << gate.target) | (std::size_t{1} << *gate.control);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & both) == both) {
                amps_[i] = -amps_[i];
            }
        }
        break;
    }
    }
}

void Statevector::apply_adjoint(const GateOp &gate) {
    if (gate.is_rotation()) {
        validate_gate(gate, n_qubits_);
        apply_rotation(gate.kind, gate.target, -gate.angle);
    } else {
        apply(gate); // H and CZ are self-inverse
    }
}

void Statevector::apply_hadamard_all() {
    for (std::size_t q = 0; q < n_qubits_; ++q) {
        apply(GateOp::h(q));
    }
}

void Statevector::apply_z_all() {
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((std::popcount(i) & 1) != 0) {
            amps_[i] = -amps_[i];
        }
    }
}

void Statevector::apply_generator(const GateOp &gate) {
    validate_gate(gate, n_qubits_);
    if (!gate.is_rotation()) {
        throw InvalidGateError("generator requested for a non-rotation gate");
    }
    const std::size_t mask = std::size_t{1} << gate.target;
    const std::size_t dim = amps_.size();
    if (gate.kind == GateKind::RY) {
        // -i Y/2 = [[0, -1/2], [1/2, 0]]
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & mask) != 0U) {
                continue;
            }
            const Complex a0 = amps_[i];
            const Complex a1 = amps_[i | mask];
            amps_[i] = -0.5 * a1;
            amps_[i | mask] = 0.5 * a0;
        }
    } else {
        // -i Z/2 = diag(-i/2, +i/2)
        for (std::size_t i = 0; i < dim; ++i) {
            const Complex a = amps_[i];
            const double sign = (i & mask) != 0U ? 0.5 : -0.5;
            amps_[i] = {-sign * a.imag(), sign * a.real()};
        }
    }
}

Statevector apply_gate(Statevector state, const GateOp &gate) {
    state.apply(gate);
    return state;
}

Statevector apply_hadamard_all(Statevector state) {
    state.apply_hadamard_all();
    return state;
}

double expectation_z_all(const Statevector &state) {
    double acc = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += (std::popcount(i) & 1) != 0 ? -p : p;
    }
    return acc;
}

Statevector run_circuit(std::span<const GateOp> gates, std::size_t n_qubits) {
    Statevector state(n_qubits);
    for (const auto &g : gates) {
        state.apply(g);
    }
    return state;
}

ExpectationWithGradient adjoint_gradient_z_expectation(std::span<const GateOp> gates,
                                                       std::size_t n_qubits) {
    Statevector psi = run_circuit(gates, n_qubits);
    ExpectationWithGradient out;
    out.value = expectation_z_all(psi);

    std::size_t n_rot = 0;
    for (const auto &g : gates) {
        n_rot += g.is_rotation() ? 1 : 0;
    }
    out.gradient.assign(n_rot, 0.0);

    Statevector lambda = psi;
    lambda.apply_z_all();
    Statevector mu = psi;
    std::size_t idx = n_rot;
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        const GateOp &g = *it;
        if (g.is_rotation()) {
            mu = psi;
            mu.apply_generator(g);
            const auto l = lambda.amplitudes();
            const auto m = mu.amplitudes();
            double re = 0.0;
            for (std::size_t i = 0; i < l.size(); ++i) {
                re += l[i].real() * m[i].real() + l[i].imag() * m[i].imag();
            }
            out.gradient[--idx] = 2.0 * re;
        }
        psi.apply_adjoint(g);
        lambda.apply_adjoint(g);
    }
    return out;
}

std::vector<double> gradient_z_expectation(std::span<const GateOp> gates, std::size_t n_qubits) {
    return adjoint_gradient_z_expectation(gates, n_qubits).gradient;
}

std::vector<double> parameter_shift_gradient_z_expectation(std::span<const GateOp> gates,
                                                           std::size_t n_qubits) {
    std::vector<GateOp> shifted(gates.begin(), gates.end());
    std::vector<double> grad;
    constexpr double shift = std::numbers::pi / 2.0;
    for (std::size_t k = 0; k < shifted.size(); ++k) {
        if (!shifted[k].is_rotation()) {
            continue;
        }
        const double angle = shifted[k].angle;
        shifted[k].angle = angle + shift;
        const double plus = expectation_z_all(run_circuit(shifted, n_qubits));
        shifted[k].angle = angle - shift;
        const double minus = expectation_z_all(run_circuit(shifted, n_qubits));
        shifted[k].angle = angle;
        grad.push_back(0.5 * (plus - minus));
    }
    return grad;
}

} // namespace regqpg::qsim
