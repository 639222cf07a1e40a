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

#include "qcsz/simulator.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "test_support.hpp"

using namespace qcsz;

namespace {

void expect_state_near(const StateVector &actual, const std::vector<Complex> &expected,
                       double tol) {
    ASSERT_EQ(actual.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_LE(std::abs(actual[i] - expected[i]), tol) << "index " << i;
    }
}

StateVector h_on_zero() {
    return apply_gate(basis_state("0"), GateApplication::make("h", {0}));
}

} // namespace

TEST(simulator, basis_states) {
    expect_state_near(basis_state("00"), {1, 0, 0, 0}, 0.0);
    expect_state_near(basis_state("11"), {0, 0, 0, 1}, 0.0);
    expect_state_near(basis_state("01"), {0, 1, 0, 0}, 0.0);
    expect_state_near(basis_state("100"), {0, 0, 0, 0, 1, 0, 0, 0}, 0.0);
    EXPECT_THROW(basis_state("0a"), std::invalid_argument);
    EXPECT_THROW(basis_state(""), std::invalid_argument);
    EXPECT_THROW(basis_state(std::string(21, '0')), std::invalid_argument);
    EXPECT_EQ(basis_state(std::string(20, '1')).size(), std::size_t{1} << 20);
}

TEST(simulator, state_vector_invariants) {
    EXPECT_THROW(StateVector({1.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(StateVector({1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(StateVector({1.0}), std::invalid_argument);
    EXPECT_NO_THROW(StateVector({Complex{0.6, 0.0}, Complex{0.0, 0.8}}));
}

TEST(simulator, apply_gate_examples) {
    expect_state_near(apply_gate(basis_state("0"), GateApplication::make("x", {0})),
                      {0, 1}, 0.0);
    expect_state_near(apply_gate(basis_state("11"), GateApplication::make("cx", {0, 1})),
                      {0, 0, 1, 0}, 0.0);
    // Control on q1 instead: |01> -> |11>.
    expect_state_near(apply_gate(basis_state("01"), GateApplication::make("cx", {1, 0})),
                      {0, 0, 0, 1}, 0.0);
    // X on q1 of a 3-qubit register flips the middle bit.
    expect_state_near(apply_gate(basis_state("000"), GateApplication::make("x", {1})),
                      {0, 0, 1, 0, 0, 0, 0, 0}, 0.0);
}

TEST(simulator, identity_is_exact_noop) {
    std::mt19937_64 rng(4);
    const StateVector psi = testutil::random_state(3, rng);
    for (std::size_t q = 0; q < 3; ++q) {
        const StateVector out = apply_gate(psi, GateApplication::make("id", {q}));
        for (std::size_t i = 0; i < psi.size(); ++i) {
            EXPECT_EQ(out[i], psi[i]);
        }
    }
}

TEST(simulator, apply_gate_rejects_invalid_ops) {
    const StateVector psi = basis_state("00");
    EXPECT_THROW(apply_gate(psi, GateApplication::make("x", {2})), std::invalid_argument);
    EXPECT_THROW(apply_gate(psi, GateApplication::make("cx", {1, 1})),
                 std::invalid_argument);
    EXPECT_THROW(apply_gate(psi, GateApplication::measure(0, 0)), std::invalid_argument);
    EXPECT_THROW(apply_gate(psi, GateApplication::make("foo", {0})),
                 std::invalid_argument);
}

TEST(simulator, run_csqrtz_examples) {
    const Circuit cs = testutil::csqrtz_circuit();
    const StateVector out11 = run(cs, basis_state("11"));
    expect_state_near(out11, {0, 0, 0, kI}, 1e-12);
    expect_state_near(run(cs, basis_state("01")), {0, 1, 0, 0}, 1e-12);
    expect_state_near(run(Circuit(2), basis_state("10")), {0, 0, 1, 0}, 0.0);
    EXPECT_THROW(run(cs, basis_state("1")), std::invalid_argument);
}

TEST(simulator, run_ignores_trailing_measurements) {
    const Circuit c(1, 1, {GateApplication::make("x", {0}), GateApplication::measure(0, 0)});
    expect_state_near(run(c, basis_state("0")), {0, 1}, 0.0);
}

TEST(simulator, probabilities_examples) {
    const StateVector phased({0.0, 0.0, 0.0, kI});
    const auto p1 = probabilities(phased);
    ASSERT_EQ(p1.size(), 1U);
    EXPECT_NEAR(p1.at("11"), 1.0, 1e-15);

    const auto p2 = probabilities(h_on_zero());
    ASSERT_EQ(p2.size(), 2U);
    EXPECT_NEAR(p2.at("0"), 0.5, 1e-15);
    EXPECT_NEAR(p2.at("1"), 0.5, 1e-15);

    const auto p3 = probabilities(basis_state("00"));
    ASSERT_EQ(p3.size(), 1U);
    EXPECT_EQ(p3.at("00"), 1.0);
}

TEST(simulator, sampling) {
    const auto deterministic = sample(basis_state("11"), 1000, 123);
    EXPECT_EQ(deterministic.shots, 1000U);
    ASSERT_EQ(deterministic.counts.size(), 1U);
    EXPECT_EQ(deterministic.counts.at("11"), 1000U);

    EXPECT_TRUE(sample(h_on_zero(), 0, 9).counts.empty());

    const auto fair = sample(h_on_zero(), 10000, 42);
    const double sigma = 50.0;
    EXPECT_LE(std::abs(static_cast<double>(fair.counts.at("0")) - 5000.0), 4 * sigma);
    EXPECT_LE(std::abs(static_cast<double>(fair.counts.at("1")) - 5000.0), 4 * sigma);
    EXPECT_EQ(fair.counts.at("0") + fair.counts.at("1"), 10000U);

    // Same seed, same counts.
    const auto again = sample(h_on_zero(), 10000, 42);
    EXPECT_EQ(again.counts, fair.counts);
}

TEST(simulator, circuit_unitary_examples) {
    EXPECT_LE(max_abs_diff(circuit_unitary(testutil::csqrtz_circuit()),
                           ComplexMatrix::diagonal({1.0, 1.0, 1.0, kI})),
              1e-12);
    EXPECT_EQ(circuit_unitary(Circuit(1)), ComplexMatrix::identity(2));
    const Circuit hh(1, 0, {GateApplication::make("h", {0}), GateApplication::make("h", {0})});
    EXPECT_LE(max_abs_diff(circuit_unitary(hh), ComplexMatrix::identity(2)), 1e-15);
    EXPECT_THROW(circuit_unitary(Circuit(11)), CapacityError);
    EXPECT_THROW(circuit_unitary(Circuit(1, 1, {GateApplication::measure(0, 0)})),
                 std::invalid_argument);
}

TEST(simulator, embed_gate_matches_kron_for_single_qubit) {
    const ComplexMatrix h = gate_matrix("h");
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const std::size_t q1[] = {1};
    EXPECT_EQ(embed_gate(h, q1, 3), kron(kron(i2, h), i2));
    // cx with control q0, target q1 on two qubits is the registry matrix.
    const std::size_t q01[] = {0, 1};
    EXPECT_EQ(embed_gate(gate_matrix("cx"), q01, 2), gate_matrix("cx"));
}

TEST(simulator, bloch_examples) {
    const BlochVector north = bloch_vector(basis_state("0"), 0);
    EXPECT_NEAR(north.x, 0.0, 1e-15);
    EXPECT_NEAR(north.y, 0.0, 1e-15);
    EXPECT_NEAR(north.z, 1.0, 1e-15);

    const BlochVector south = bloch_vector(basis_state("1"), 0);
    EXPECT_NEAR(south.z, -1.0, 1e-15);

    const StateVector after = run(testutil::csqrtz_circuit(), basis_state("11"));
    const BlochVector q1 = bloch_vector(after, 1);
    EXPECT_NEAR(q1.x, 0.0, 1e-12);
    EXPECT_NEAR(q1.y, 0.0, 1e-12);
    EXPECT_NEAR(q1.z, -1.0, 1e-12);

    const BlochVector plus = bloch_vector(h_on_zero(), 0);
    EXPECT_NEAR(plus.x, 1.0, 1e-15);
    EXPECT_NEAR(plus.y, 0.0, 1e-15);
    EXPECT_NEAR(plus.z, 0.0, 1e-15);
    EXPECT_NEAR(plus.purity, 1.0, 1e-15);

    // (|0> + i|1>)/sqrt(2) sits on +y; S rotates +x to +y.
    const StateVector plus_i = apply_gate(h_on_zero(), GateApplication::make("s", {0}));
    EXPECT_NEAR(bloch_vector(plus_i, 0).y, 1.0, 1e-15);

    EXPECT_THROW(bloch_vector(basis_state("0"), 1), std::invalid_argument);
}

TEST(simulator, bloch_of_entangled_qubit_is_mixed) {
    const Circuit bell(2, 0, {GateApplication::make("h", {0}), GateApplication::make("cx", {0, 1})});
    const StateVector psi = run(bell, basis_state("00"));
    for (std::size_t q = 0; q < 2; ++q) {
        const BlochVector b = bloch_vector(psi, q);
        EXPECT_NEAR(b.x * b.x + b.y * b.y + b.z * b.z, 0.0, 1e-15);
        EXPECT_NEAR(b.purity, 0.5, 1e-15);
    }
}

TEST(simulator_property, norm_preserved_and_matches_unitary_columns) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const Circuit c = testutil::random_circuit(rng, 5, 20);
        const ComplexMatrix u = circuit_unitary(c);
        const std::size_t dim = std::size_t{1} << c.num_qubits();
        for (std::size_t j = 0; j < dim; ++j) {
            const StateVector out =
                run(c, basis_state(index_to_bits(j, c.num_qubits())));
            EXPECT_LE(std::abs(out.norm_squared() - 1.0), 1e-10);
            for (std::size_t i = 0; i < dim; ++i) {
                ASSERT_LE(std::abs(out[i] - u(i, j)), 1e-9)
                    << "trial " << trial << " column " << j;
            }
        }
    }
}

TEST(simulator_property, diagonal_circuits_keep_probabilities) {
    std::mt19937_64 rng(17);
    const std::vector<std::string> diag = {"id", "z", "s", "sdg", "t", "tdg", "p", "rz"};
    std::uniform_int_distribution<std::size_t> pick(0, diag.size() - 1);
    std::uniform_real_distribution<double> angle(-4.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 4;
        std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
        std::vector<GateApplication> ops;
        for (int k = 0; k < 15; ++k) {
            const std::string &name = diag[pick(rng)];
            std::vector<double> params;
            if (gate_spec(name).param_count == 1) {
                params.push_back(angle(rng));
            }
            ops.push_back(GateApplication::make(name, {qubit(rng)}, params));
        }
        const StateVector psi = testutil::random_state(n, rng);
        const StateVector out = run(Circuit(n, 0, ops), psi);
        for (std::size_t i = 0; i < psi.size(); ++i) {
            EXPECT_NEAR(std::norm(out[i]), std::norm(psi[i]), 1e-12);
        }
    }
}

TEST(simulator_property, single_qubit_bloch_vectors_are_unit) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const BlochVector b = bloch_vector(testutil::random_state(1, rng), 0);
        EXPECT_NEAR(b.x * b.x + b.y * b.y + b.z * b.z, 1.0, 1e-9);
        EXPECT_NEAR(b.purity, 1.0, 1e-9);
    }
}

TEST(simulator, twenty_qubit_gate_application) {
    StateVector psi = basis_state(std::string(20, '0'));
    psi = apply_gate(psi, GateApplication::make("h", {19}));
    psi = apply_gate(psi, GateApplication::make("cx", {19, 0}));
    const auto p = probabilities(psi);
    ASSERT_EQ(p.size(), 2U);
    EXPECT_NEAR(p.at(std::string(20, '0')), 0.5, 1e-15);
    EXPECT_NEAR(p.at("1" + std::string(18, '0') + "1"), 0.5, 1e-15);
}
