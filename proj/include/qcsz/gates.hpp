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
 * Registry of named gates and their matrices.
 *
 * Ordering convention: the leftmost ket symbol is qubit 0 and is the most
 * significant bit of a basis index, so |q0 q1> = |10> is index 2. Under this
 * convention the controlled gates below read exactly as printed in textbooks
 * with the control written first.
 */

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "numerics.hpp"

namespace qcsz {

/// Raised when a gate name is not in the registry.
class UnknownGateError : public std::out_of_range {
  public:
    explicit UnknownGateError(std::string_view name)
        : std::out_of_range("unknown gate '" + std::string(name) + "'"),
          name_(name) {}

    [[nodiscard]] const std::string &name() const noexcept { return name_; }

  private:
    std::string name_;
};

/// Phase gate diag(1, e^{i lambda}).
inline ComplexMatrix phase_matrix(double lambda) {
    return ComplexMatrix::diagonal({1.0, std::polar(1.0, lambda)});
}

/// diag(e^{-i theta/2}, e^{i theta/2}).
inline ComplexMatrix rz_matrix(double theta) {
    return ComplexMatrix::diagonal(
        {std::polar(1.0, -theta / 2), std::polar(1.0, theta / 2)});
}

inline ComplexMatrix ry_matrix(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {{c, -s}, {s, c}};
}

inline ComplexMatrix rx_matrix(double theta) {
    const double c = std::cos(theta / 2);
    const Complex ms{0.0, -std::sin(theta / 2)};
    return {{c, ms}, {ms, c}};
}

/// One registry entry.
struct GateSpec {
    std::string_view name;
    int arity;       ///< qubits acted on: 1 or 2
    int param_count; ///< 0 or 1 real angle
    ComplexMatrix (*build)(std::span<const double> params);

    [[nodiscard]] ComplexMatrix matrix(std::span<const double> params) const {
        return build(params);
    }
};

namespace detail {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline ComplexMatrix build_id(std::span<const double>) {
    return ComplexMatrix::identity(2);
}
inline ComplexMatrix build_x(std::span<const double>) {
    return {{0.0, 1.0}, {1.0, 0.0}};
}
inline ComplexMatrix build_y(std::span<const double>) {
    return {{0.0, -kI}, {kI, 0.0}};
}
inline ComplexMatrix build_z(std::span<const double>) {
    return ComplexMatrix::diagonal({1.0, -1.0});
}
inline ComplexMatrix build_h(std::span<const double>) {
    return {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
}
inline ComplexMatrix build_s(std::span<const double>) {
    return ComplexMatrix::diagonal({1.0, kI});
}
inline ComplexMatrix build_sdg(std::span<const double>) {
    return ComplexMatrix::diagonal({1.0, -kI});
}
inline ComplexMatrix build_t(std::span<const double>) {
    return ComplexMatrix::diagonal({1.0, Complex{kInvSqrt2, kInvSqrt2}});
}
inline ComplexMatrix build_tdg(std::span<const double>) {
    return ComplexMatrix::diagonal({1.0, Complex{kInvSqrt2, -kInvSqrt2}});
}
inline ComplexMatrix build_cx(std::span<const double>) {
    return {{1.0, 0.0, 0.0, 0.0},
            {0.0, 1.0, 0.0, 0.0},
            {0.0, 0.0, 0.0, 1.0},
            {0.0, 0.0, 1.0, 0.0}};
}
inline ComplexMatrix build_p(std::span<const double> p) {
    return phase_matrix(p[0]);
}
inline ComplexMatrix build_rz(std::span<const double> p) {
    return rz_matrix(p[0]);
}
inline ComplexMatrix build_ry(std::span<const double> p) {
    return ry_matrix(p[0]);
}
inline ComplexMatrix build_rx(std::span<const double> p) {
    return rx_matrix(p[0]);
}

inline constexpr std::array<GateSpec, 14> kRegistry{{
    {"id", 1, 0, build_id},
    {"x", 1, 0, build_x},
    {"y", 1, 0, build_y},
    {"z", 1, 0, build_z},
    {"h", 1, 0, build_h},
    {"s", 1, 0, build_s},
    {"sdg", 1, 0, build_sdg},
    {"t", 1, 0, build_t},
    {"tdg", 1, 0, build_tdg},
    {"cx", 2, 0, build_cx},
    {"p", 1, 1, build_p},
    {"rz", 1, 1, build_rz},
    {"ry", 1, 1, build_ry},
    {"rx", 1, 1, build_rx},
}};

} // namespace detail

inline std::span<const GateSpec> gate_registry() noexcept {
    return detail::kRegistry;
}

/// Registry entry for name, or nullptr.
inline const GateSpec *find_gate(std::string_view name) noexcept {
    for (const auto &spec : detail::kRegistry) {
        if (spec.name == name) {
            return &spec;
        }
    }
    return nullptr;
}

inline const GateSpec &gate_spec(std::string_view name) {
    if (const GateSpec *spec = find_gate(name)) {
        return *spec;
    }
    throw UnknownGateError(name);
}

inline ComplexMatrix gate_matrix(std::string_view name,
                                 std::span<const double> params = {}) {
    const GateSpec &spec = gate_spec(name);
    if (params.size() != static_cast<std::size_t>(spec.param_count)) {
        throw std::invalid_argument(
            "gate '" + std::string(name) + "' takes " +
            std::to_string(spec.param_count) + " parameter(s), got " +
            std::to_string(params.size()));
    }
    return spec.build(params);
}

inline ComplexMatrix gate_matrix(std::string_view name,
                                 std::initializer_list<double> params) {
    return gate_matrix(name, std::span<const double>(params.begin(), params.size()));
}

/// Two-qubit controlled-u: identity when the control (qubit 0) is |0>, u when
/// it is |1>.
inline ComplexMatrix controlled(const ComplexMatrix &u) {
    if (u.dim() != 2) {
        throw std::invalid_argument("controlled: expected a 2x2 matrix");
    }
    if (!is_unitary(u, kDefaultTol)) {
        throw std::invalid_argument("controlled: matrix is not unitary");
    }
    std::vector<Complex> e(16);
    e[0] = 1.0;
    e[5] = 1.0;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            e[(2 + r) * 4 + 2 + c] = u(r, c);
        }
    }
    return {4, std::move(e)};
}

/// Named gate equal to p(lambda), if lambda is a multiple of pi/4 on the table
/// {0, +-pi/4, +-pi/2, pi}.
inline std::optional<std::string_view> match_named_phase(double lambda) {
    constexpr double kAngleTol = 1e-9;
    struct Entry {
        double angle;
        std::string_view name;
    };
    static constexpr std::array<Entry, 6> kTable{{
        {0.0, "id"},
        {kPi / 4, "t"},
        {-kPi / 4, "tdg"},
        {kPi / 2, "s"},
        {-kPi / 2, "sdg"},
        {kPi, "z"},
    }};
    const double a = normalize_angle(lambda);
    for (const auto &entry : kTable) {
        // pi and -pi are the same phase; compare on the circle.
        if (std::abs(normalize_angle(a - entry.angle)) <= kAngleTol) {
            return entry.name;
        }
    }
    return std::nullopt;
}

} // namespace qcsz
