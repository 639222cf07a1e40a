// Copyright 2026 The qcsz Authors

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
 * @file
 * Controlled-gate synthesis from CNOTs and single-qubit gates.
 *
 * Any single-qubit unitary U can be written as e^{i theta} A X B X C with
 * A B C = I. Controlling U then needs only two CNOTs: the target line
 * carries C, CNOT, B, CNOT, A, and the control line carries the phase gate
 * p(theta). With the control at |0> the target sees A B C = I; at |1> it
 * sees A X B X C, and the control's phase supplies e^{i theta}.
 *
 * Diagonal U = e^{i mu} p(lambda) take a shortcut: A = p(lambda/2),
 * B = p(-lambda/2), C = I, theta = mu + lambda/2. For U = S this yields
 * A = T, B = T^dagger, theta = pi/4, i.e. the familiar five-gate
 * controlled-S built from T, T^dagger and two CNOTs.
 */

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "gates.hpp"
#include "numerics.hpp"
#include "simulator.hpp"

namespace qcsz {

/// u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct ZyzAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0; ///< in [0, pi]
    double delta = 0.0;

    [[nodiscard]] ComplexMatrix matrix() const {
        return (rz_matrix(beta) * ry_matrix(gamma) * rz_matrix(delta))
            .scaled(std::polar(1.0, alpha));
    }
};

struct AbcDecomposition {
    ComplexMatrix a{2};
    ComplexMatrix b{2};
    ComplexMatrix c{2};
    double theta = 0.0;
    ComplexMatrix source{2};

    /// e^{i theta} a X b X c, which should reproduce source.
    [[nodiscard]] ComplexMatrix reconstruct() const {
        const ComplexMatrix x = gate_matrix("x");
        return (a * x * b * x * c).scaled(std::polar(1.0, theta));
    }

    /// How the factors map onto gates. Empty recipes mean identity.
    std::vector<GateApplication> a_ops;
    std::vector<GateApplication> b_ops;
    std::vector<GateApplication> c_ops;
};

namespace detail {

inline void require_single_qubit_unitary(const ComplexMatrix &u, const char *who) {
    if (u.dim() != 2) {
        throw std::invalid_argument(std::string(who) + ": expected a 2x2 matrix");
    }
    const double dev = unitarity_deviation(u);
    if (dev > kDefaultTol) {
        throw std::invalid_argument(std::string(who) +
                                    ": matrix is not unitary (max deviation " +
                                    std::to_string(dev) + ")");
    }
}

inline double arg_or_zero(Complex z) {
    return z == Complex{} ? 0.0 : std::arg(z);
}

/// Recipe op on target qubit 0; synthesize_controlled remaps the qubit.
inline GateApplication on_target(std::string name, std::vector<double> params = {}) {
    return GateApplication::make(std::move(name), {0}, std::move(params));
}

} // namespace detail

/**
 * @brief Euler ZYZ angles of a single-qubit unitary.
 *
 * gamma = 2 atan2(|u10|, |u00|). When gamma is within 1e-9 of 0 only
 * beta + delta is determined, and when it is within 1e-9 of pi only
 * beta - delta is; delta is set to 0 in both cases.
 */
inline ZyzAngles zyz_angles(const ComplexMatrix &u) {
    detail::require_single_qubit_unitary(u, "zyz_angles");
    constexpr double kDegenerate = 1e-9;

    // Strip the global phase: v = e^{-i alpha} u has unit determinant,
    // v = [[e^{-i(b+d)/2} cos(g/2), .], [e^{i(b-d)/2} sin(g/2), .]].
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    double alpha = std::arg(det) / 2.0;
    const Complex unphase = std::polar(1.0, -alpha);
    const Complex v00 = u(0, 0) * unphase;
    const Complex v10 = u(1, 0) * unphase;

    const double gamma = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
    const double sum = -2.0 * detail::arg_or_zero(v00);  // beta + delta
    const double diff = 2.0 * detail::arg_or_zero(v10);  // beta - delta

    double beta = 0.0;
    double delta = 0.0;
    if (gamma < kDegenerate) {
        beta = sum;
    } else if (std::abs(gamma - kPi) < kDegenerate) {
        beta = diff;
    } else {
        beta = (sum + diff) / 2.0;
        delta = (sum - diff) / 2.0;
    }

    // Rz(x + 2 pi) = -Rz(x): every 2 pi shift of beta or delta is paid for
    // with pi in alpha.
    auto wrap = [&alpha](double angle) {
        const double wrapped = normalize_angle(angle);
        const double turns = std::round((angle - wrapped) / (2.0 * kPi));
        alpha += kPi * turns;
        return wrapped;
    };
    beta = wrap(beta);
    delta = wrap(delta);
    alpha = normalize_angle(alpha);
    return {alpha, beta, gamma, delta};
}

/// Finds A, B, C, theta with e^{i theta} A X B X C = u and A B C = I.
inline AbcDecomposition abc_decompose(const ComplexMatrix &u) {
    detail::require_single_qubit_unitary(u, "abc_decompose");
    constexpr double kOffDiagonal = 1e-12;
    using detail::on_target;

    AbcDecomposition dec;
    dec.source = u;

    if (std::abs(u(0, 1)) < kOffDiagonal && std::abs(u(1, 0)) < kOffDiagonal) {
        // u = e^{i mu} p(lambda)
        const double mu = std::arg(u(0, 0));
        const double lambda = normalize_angle(std::arg(u(1, 1)) - mu);
        dec.a = phase_matrix(lambda / 2);
        dec.b = phase_matrix(-lambda / 2);
        dec.c = ComplexMatrix::identity(2);
        dec.theta = normalize_angle(lambda / 2 + mu);
        dec.a_ops = {on_target("p", {lambda / 2})};
        dec.b_ops = {on_target("p", {-lambda / 2})};
        return dec;
    }

    const ZyzAngles z = zyz_angles(u);
    // A = Rz(beta) Ry(gamma/2), B = Ry(-gamma/2) Rz(-(delta+beta)/2),
    // C = Rz((delta-beta)/2). Recipes list ops in application order.
    const double b_rz = -(z.delta + z.beta) / 2;
    const double c_rz = (z.delta - z.beta) / 2;
    dec.a = rz_matrix(z.beta) * ry_matrix(z.gamma / 2);
    dec.b = ry_matrix(-z.gamma / 2) * rz_matrix(b_rz);
    dec.c = rz_matrix(c_rz);
    dec.theta = z.alpha;
    dec.a_ops = {on_target("ry", {z.gamma / 2}), on_target("rz", {z.beta})};
    dec.b_ops = {on_target("rz", {b_rz}), on_target("ry", {-z.gamma / 2})};
    dec.c_ops = {on_target("rz", {c_rz})};
    return dec;
}

namespace detail {

inline constexpr double kIdentityTol = 1e-12;

/// Gates realizing one factor on qubit q, in application order.
inline std::vector<GateApplication>
factor_gates(const ComplexMatrix &factor,
             const std::vector<GateApplication> &recipe, std::size_t q) {
    if (approx_equal(factor, ComplexMatrix::identity(2), kIdentityTol)) {
        return {};
    }
    // Exact match with a fixed registry gate.
    for (const GateSpec &spec : gate_registry()) {
        if (spec.arity == 1 && spec.param_count == 0 && spec.name != "id" &&
            approx_equal(spec.matrix({}), factor, kIdentityTol)) {
            return {GateApplication::make(std::string(spec.name), {q})};
        }
    }
    // Pure phase gate diag(1, e^{i lambda}).
    if (std::abs(factor(0, 1)) < kIdentityTol &&
        std::abs(factor(1, 0)) < kIdentityTol &&
        std::abs(factor(0, 0) - 1.0) < kIdentityTol) {
        const double lambda = std::arg(factor(1, 1));
        if (auto name = match_named_phase(lambda)) {
            return {GateApplication::make(std::string(*name), {q})};
        }
        return {GateApplication::make("p", {q}, {lambda})};
    }
    std::vector<GateApplication> ops;
    for (const GateApplication &r : recipe) {
        if (std::abs(r.params.at(0)) < kIdentityTol) {
            continue;
        }
        ops.push_back(GateApplication::make(r.gate, {q}, r.params));
    }
    return ops;
}

} // namespace detail

/**
 * @brief Circuit for controlled-U on an n-qubit register.
 *
 * Application order: C on target, cx, B on target, cx, A on target, then
 * p(theta) on control. Identity factors are dropped and a theta within 1e-12
 * of zero omits the control phase gate.
 */
inline Circuit synthesize_controlled(const AbcDecomposition &dec,
                                     std::size_t control, std::size_t target,
                                     std::size_t num_qubits) {
    if (control == target) {
        throw std::invalid_argument(
            "synthesize_controlled: control and target must differ");
    }
    if (control >= num_qubits || target >= num_qubits) {
        throw std::invalid_argument(
            "synthesize_controlled: qubit index outside the register");
    }
    std::vector<GateApplication> ops;
    auto append = [&ops](std::vector<GateApplication> more) {
        ops.insert(ops.end(), more.begin(), more.end());
    };
    const auto cnot = GateApplication::make("cx", {control, target});

    const auto c_gates = detail::factor_gates(dec.c, dec.c_ops, target);
    const auto b_gates = detail::factor_gates(dec.b, dec.b_ops, target);
    const auto a_gates = detail::factor_gates(dec.a, dec.a_ops, target);

    // With A = B = C = I the CNOT pair cancels as well.
    const bool all_identity = a_gates.empty() && b_gates.empty() && c_gates.empty();
    append(c_gates);
    if (!all_identity) {
        ops.push_back(cnot);
    }
    append(b_gates);
    if (!all_identity) {
        ops.push_back(cnot);
    }
    append(a_gates);

    const double theta = normalize_angle(dec.theta);
    if (std::abs(theta) > detail::kIdentityTol) {
        if (auto name = match_named_phase(theta)) {
            ops.push_back(GateApplication::make(std::string(*name), {control}));
        } else {
            ops.push_back(GateApplication::make("p", {control}, {theta}));
        }
    }
    return Circuit(num_qubits, 0, std::move(ops));
}

/// Rewrites p(lambda) ops whose angle is on the named-phase table.
inline Circuit discretize(const Circuit &c) {
    require_valid(c);
    std::vector<GateApplication> ops;
    ops.reserve(c.size());
    for (const GateApplication &op : c.ops()) {
        if (op.gate == "p" && !op.is_measurement) {
            if (auto name = match_named_phase(op.params.at(0))) {
                ops.push_back(GateApplication::make(std::string(*name), op.qubits));
                continue;
            }
        }
        ops.push_back(op);
    }
    return Circuit(c.num_qubits(), c.num_clbits(), std::move(ops));
}

enum class CompareMode { exact, up_to_global_phase };

/// Compares circuit_unitary(c) with reference.
inline EquivalenceReport verify_against(const Circuit &c,
                                        const ComplexMatrix &reference,
                                        double tol, CompareMode mode) {
    if (c.num_qubits() > kMaxUnitaryQubits) {
        throw CapacityError("verify_against: circuit too large to verify");
    }
    if (reference.dim() != (std::size_t{1} << c.num_qubits())) {
        throw std::invalid_argument(
            "verify_against: reference dimension " +
            std::to_string(reference.dim()) + " does not match a " +
            std::to_string(c.num_qubits()) + "-qubit circuit");
    }
    const ComplexMatrix u = circuit_unitary(c);
    if (mode == CompareMode::up_to_global_phase) {
        return equal_up_to_global_phase(reference, u, tol);
    }
    const double dev = max_abs_diff(u, reference);
    return {dev <= tol, 0.0, dev};
}

} // namespace qcsz
