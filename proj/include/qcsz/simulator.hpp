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
 * Pure-state simulation: state vectors, gate application by index
 * arithmetic, full circuit unitaries, measurement statistics and per-qubit
 * Bloch coordinates.
 *
 * Qubit 0 is the most significant bit of a basis index and the leftmost
 * character of a bit string, so "01" means q0 = 0, q1 = 1 (index 1).
 */

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "gates.hpp"
#include "numerics.hpp"

namespace qcsz {

/// Largest register circuit_unitary() will materialize.
inline constexpr std::size_t kMaxUnitaryQubits = 10;

/// Bit string for a basis index, qubit 0 first.
inline std::string index_to_bits(std::size_t index, std::size_t num_qubits) {
    std::string bits(num_qubits, '0');
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if ((index >> (num_qubits - 1 - q)) & 1U) {
            bits[q] = '1';
        }
    }
    return bits;
}

class StateVector {
  public:
    /// Wraps amplitudes; the length must be a power of two and the vector
    /// normalized within 1e-10.
    explicit StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
        const std::size_t len = amps_.size();
        if (len < 2 || (len & (len - 1)) != 0) {
            throw std::invalid_argument(
                "StateVector: length must be a power of two >= 2");
        }
        num_qubits_ = static_cast<std::size_t>(std::countr_zero(len));
        if (num_qubits_ > kMaxQubits) {
            throw CapacityError("StateVector: too many qubits");
        }
        double norm = 0.0;
        for (const auto &a : amps_) {
            if (!is_finite(a)) {
                throw std::invalid_argument("StateVector: non-finite amplitude");
            }
            norm += std::norm(a);
        }
        if (std::abs(norm - 1.0) > 1e-10) {
            throw std::invalid_argument("StateVector: amplitudes not normalized");
        }
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const {
        double n = 0.0;
        for (const auto &a : amps_) {
            n += std::norm(a);
        }
        return n;
    }

  private:
    struct Unchecked {};
    StateVector(Unchecked, std::size_t n, std::vector<Complex> amps)
        : num_qubits_(n), amps_(std::move(amps)) {}

    friend StateVector apply_gate(const StateVector &, const GateApplication &);

    std::size_t num_qubits_ = 0;
    std::vector<Complex> amps_;
};

/// Computational basis state; bits[0] is qubit 0.
inline StateVector basis_state(std::string_view bits) {
    if (bits.empty() || bits.size() > kMaxQubits) {
        throw std::invalid_argument("basis_state: need between 1 and " +
                                    std::to_string(kMaxQubits) + " bits");
    }
    std::size_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("basis_state: '" + std::string(bits) +
                                        "' is not a bit string");
        }
        index = (index << 1) | static_cast<std::size_t>(ch == '1');
    }
    std::vector<Complex> amps(std::size_t{1} << bits.size());
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

/**
 * @brief Applies one gate to a state without building the full operator.
 *
 * For each assignment of the non-target bits, the 2 or 4 amplitudes that
 * differ only in the target bits are gathered, multiplied by the gate matrix
 * and scattered back.
 */
inline StateVector apply_gate(const StateVector &state, const GateApplication &op) {
    const std::size_t n = state.num_qubits();
    if (op.is_measurement) {
        throw std::invalid_argument("apply_gate: measurements are not unitary");
    }
    {
        const Circuit probe(n, 0, {op});
        require_valid(probe);
    }
    const ComplexMatrix m = gate_matrix(op.gate, op.params);
    std::vector<Complex> out(state.amplitudes().begin(), state.amplitudes().end());

    if (op.qubits.size() == 1) {
        const std::size_t mask = std::size_t{1} << (n - 1 - op.qubits[0]);
        const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i & mask) {
                continue;
            }
            const Complex a0 = out[i];
            const Complex a1 = out[i | mask];
            out[i] = m00 * a0 + m01 * a1;
            out[i | mask] = m10 * a0 + m11 * a1;
        }
    } else {
        // Gate index = 2 * bit(first operand) + bit(second operand).
        const std::size_t hi = std::size_t{1} << (n - 1 - op.qubits[0]);
        const std::size_t lo = std::size_t{1} << (n - 1 - op.qubits[1]);
        const std::size_t idx_mask[4] = {0, lo, hi, hi | lo};
        for (std::size_t base = 0; base < out.size(); ++base) {
            if (base & (hi | lo)) {
                continue;
            }
            Complex in[4];
            for (std::size_t k = 0; k < 4; ++k) {
                in[k] = out[base | idx_mask[k]];
            }
            for (std::size_t r = 0; r < 4; ++r) {
                Complex acc{};
                for (std::size_t c = 0; c < 4; ++c) {
                    acc += m(r, c) * in[c];
                }
                out[base | idx_mask[r]] = acc;
            }
        }
    }
    return StateVector(StateVector::Unchecked{}, n, std::move(out));
}

/// Applies every gate of c in order; trailing measurements are ignored.
inline StateVector run(const Circuit &c, const StateVector &initial) {
    require_valid(c);
    if (initial.num_qubits() != c.num_qubits()) {
        throw std::invalid_argument("run: state has " +
                                    std::to_string(initial.num_qubits()) +
                                    " qubits, circuit has " +
                                    std::to_string(c.num_qubits()));
    }
    StateVector state = initial;
    for (const GateApplication &op : c.ops()) {
        if (!op.is_measurement) {
            state = apply_gate(state, op);
        }
    }
    return state;
}

/// Outcome probabilities |a_i|^2 keyed by bit string; entries below 1e-15
/// are omitted.
inline std::map<std::string, double> probabilities(const StateVector &state) {
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double p = std::norm(state[i]);
        if (p >= 1e-15) {
            out.emplace(index_to_bits(i, state.num_qubits()), p);
        }
    }
    return out;
}

struct MeasurementCounts {
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> counts;
};

/// Draws shots standard-basis outcomes. The sequence is a pure function of
/// (state, shots, seed) for a given build.
inline MeasurementCounts sample(const StateVector &state, std::uint64_t shots,
                                std::uint64_t seed) {
    MeasurementCounts result{shots, {}};
    if (shots == 0) {
        return result;
    }
    std::vector<double> weights(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        weights[i] = std::norm(state[i]);
    }
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
    std::vector<std::uint64_t> hist(state.size());
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++hist[dist(rng)];
    }
    for (std::size_t i = 0; i < hist.size(); ++i) {
        if (hist[i] != 0) {
            result.counts.emplace(index_to_bits(i, state.num_qubits()), hist[i]);
        }
    }
    return result;
}

/**
 * @brief Full 2^n x 2^n operator of a gate placed on the given qubits.
 *
 * Entry (r, c) is gate(sub(r), sub(c)) when r and c agree on every
 * non-target bit and 0 otherwise, where sub() reads the target bits in
 * operand order.
 */
inline ComplexMatrix embed_gate(const ComplexMatrix &gate,
                                std::span<const std::size_t> qubits,
                                std::size_t num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    std::size_t target_mask = 0;
    for (std::size_t q : qubits) {
        target_mask |= std::size_t{1} << (num_qubits - 1 - q);
    }
    auto sub = [&](std::size_t index) {
        std::size_t s = 0;
        for (std::size_t q : qubits) {
            s = (s << 1) | ((index >> (num_qubits - 1 - q)) & 1U);
        }
        return s;
    };
    std::vector<Complex> e(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~target_mask) == (c & ~target_mask)) {
                e[r * dim + c] = gate(sub(r), sub(c));
            }
        }
    }
    return {dim, std::move(e)};
}

/// Product of the embedded gate matrices, last op leftmost.
inline ComplexMatrix circuit_unitary(const Circuit &c) {
    if (c.num_qubits() > kMaxUnitaryQubits) {
        throw CapacityError("circuit_unitary: " + std::to_string(c.num_qubits()) +
                            " qubits exceeds the limit of " +
                            std::to_string(kMaxUnitaryQubits));
    }
    require_valid(c);
    if (c.has_measurements()) {
        throw std::invalid_argument("circuit_unitary: circuit contains measurements");
    }
    ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << c.num_qubits());
    for (const GateApplication &op : c.ops()) {
        u = matmul(embed_gate(gate_matrix(op.gate, op.params), op.qubits,
                              c.num_qubits()),
                   u);
    }
    return u;
}

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double purity = 1.0; ///< trace(rho^2) of the reduced state
};

/// Bloch coordinates of one qubit's reduced density operator.
inline BlochVector bloch_vector(const StateVector &state, std::size_t qubit) {
    const std::size_t n = state.num_qubits();
    if (qubit >= n) {
        throw std::invalid_argument("bloch_vector: qubit " + std::to_string(qubit) +
                                    " out of range");
    }
    const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
    double rho00 = 0.0;
    double rho11 = 0.0;
    Complex rho01{};
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const Complex a0 = state[i];
        const Complex a1 = state[i | mask];
        rho00 += std::norm(a0);
        rho11 += std::norm(a1);
        rho01 += a0 * std::conj(a1);
    }
    return {2.0 * rho01.real(), -2.0 * rho01.imag(), rho00 - rho11,
            rho00 * rho00 + rho11 * rho11 + 2.0 * std::norm(rho01)};
}

} // namespace qcsz
