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

// Random unitaries, states and circuits shared by the test suites.

#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qcsz/circuit.hpp"
#include "qcsz/numerics.hpp"
#include "qcsz/simulator.hpp"

namespace qcsz::testutil {

inline Complex gaussian_complex(std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng), n(rng)};
}

/// Random unitary: complex Gaussian matrix orthonormalized column by column
/// (modified Gram-Schmidt).
inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (auto &col : cols) {
        for (auto &z : col) {
            z = gaussian_complex(rng);
        }
    }
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot{};
            for (std::size_t i = 0; i < dim; ++i) {
                dot += std::conj(cols[k][i]) * cols[j][i];
            }
            for (std::size_t i = 0; i < dim; ++i) {
                cols[j][i] -= dot * cols[k][i];
            }
        }
        double norm = 0.0;
        for (const auto &z : cols[j]) {
            norm += std::norm(z);
        }
        norm = std::sqrt(norm);
        for (auto &z : cols[j]) {
            z /= norm;
        }
    }
    std::vector<Complex> e(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            e[r * dim + c] = cols[c][r];
        }
    }
    return {dim, std::move(e)};
}

inline StateVector random_state(std::size_t num_qubits, std::mt19937_64 &rng) {
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    double norm = 0.0;
    for (auto &a : amps) {
        a = gaussian_complex(rng);
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return StateVector(std::move(amps));
}

/// Angle drawn either from the k*pi/4 grid or uniformly from [-2pi, 2pi].
inline double random_angle(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> coin(0, 3);
    if (coin(rng) == 0) {
        std::uniform_int_distribution<int> k(-8, 8);
        return k(rng) * (kPi / 4);
    }
    std::uniform_real_distribution<double> u(-2 * kPi, 2 * kPi);
    return u(rng);
}

inline GateApplication random_gate(std::size_t num_qubits, std::mt19937_64 &rng,
                                   bool allow_two_qubit = true) {
    static const std::vector<std::string> kNames = {
        "id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "cx", "p", "rz", "ry", "rx"};
    std::uniform_int_distribution<std::size_t> pick(0, kNames.size() - 1);
    std::uniform_int_distribution<std::size_t> qubit(0, num_qubits - 1);
    for (;;) {
        const std::string &name = kNames[pick(rng)];
        const GateSpec &spec = gate_spec(name);
        if (spec.arity == 2 && (num_qubits < 2 || !allow_two_qubit)) {
            continue;
        }
        std::vector<std::size_t> qs{qubit(rng)};
        if (spec.arity == 2) {
            std::size_t t = qubit(rng);
            while (t == qs[0]) {
                t = qubit(rng);
            }
            qs.push_back(t);
        }
        std::vector<double> params;
        for (int i = 0; i < spec.param_count; ++i) {
            params.push_back(random_angle(rng));
        }
        return GateApplication::make(name, std::move(qs), std::move(params));
    }
}

/// Random valid circuit with 1..max_qubits qubits and 0..max_depth gates.
inline Circuit random_circuit(std::mt19937_64 &rng, std::size_t max_qubits = 5,
                              std::size_t max_depth = 20,
                              bool with_measurements = false) {
    std::uniform_int_distribution<std::size_t> nq(1, max_qubits);
    std::uniform_int_distribution<std::size_t> depth(0, max_depth);
    const std::size_t n = nq(rng);
    std::vector<GateApplication> ops;
    const std::size_t d = depth(rng);
    for (std::size_t i = 0; i < d; ++i) {
        ops.push_back(random_gate(n, rng));
    }
    std::size_t clbits = 0;
    if (with_measurements) {
        std::uniform_int_distribution<std::size_t> m(0, n);
        const std::size_t count = m(rng);
        clbits = count;
        for (std::size_t k = 0; k < count; ++k) {
            ops.push_back(GateApplication::measure(k, k));
        }
    }
    return Circuit(n, clbits, std::move(ops));
}

/// The five-gate controlled-sqrt(Z) circuit on a 2-qubit register.
inline Circuit csqrtz_circuit() {
    return Circuit(2, 0,
                   {GateApplication::make("t", {1}), GateApplication::make("cx", {0, 1}),
                    GateApplication::make("tdg", {1}),
                    GateApplication::make("cx", {0, 1}),
                    GateApplication::make("t", {0})});
}

} // namespace qcsz::testutil
