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
 * Circuit intermediate representation: an ordered list of gate applications
 * over a single quantum register q and an optional classical register c.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gates.hpp"
#include "numerics.hpp"

namespace qcsz {

inline constexpr std::size_t kMaxQubits = 20;

struct GateApplication {
    std::string gate;               ///< registry name, or "measure"
    std::vector<double> params;     ///< radians
    std::vector<std::size_t> qubits; ///< control first for cx
    bool is_measurement = false;
    std::size_t clbit = 0; ///< classical target, measurements only

    static GateApplication make(std::string name, std::vector<std::size_t> qubits,
                                std::vector<double> params = {}) {
        return {std::move(name), std::move(params), std::move(qubits), false, 0};
    }

    static GateApplication measure(std::size_t qubit, std::size_t clbit) {
        return {"measure", {}, {qubit}, true, clbit};
    }

    friend bool operator==(const GateApplication &,
                           const GateApplication &) = default;
};

class Circuit {
  public:
    explicit Circuit(std::size_t num_qubits, std::size_t num_clbits = 0,
                     std::vector<GateApplication> ops = {})
        : num_qubits_(num_qubits), num_clbits_(num_clbits), ops_(std::move(ops)) {
        if (num_qubits_ == 0) {
            throw std::invalid_argument("Circuit: register needs at least one qubit");
        }
        if (num_qubits_ > kMaxQubits) {
            throw CapacityError("Circuit: " + std::to_string(num_qubits_) +
                                " qubits exceeds the limit of " +
                                std::to_string(kMaxQubits));
        }
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t num_clbits() const noexcept { return num_clbits_; }
    [[nodiscard]] const std::vector<GateApplication> &ops() const noexcept {
        return ops_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }
    [[nodiscard]] bool empty() const noexcept { return ops_.empty(); }

    [[nodiscard]] bool has_measurements() const {
        return std::any_of(ops_.begin(), ops_.end(),
                           [](const auto &op) { return op.is_measurement; });
    }

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    std::size_t num_qubits_;
    std::size_t num_clbits_;
    std::vector<GateApplication> ops_;
};

/// Same registers and op sequence, parameters compared within tol.
inline bool structurally_equal(const Circuit &a, const Circuit &b,
                               double tol = 1e-15) {
    if (a.num_qubits() != b.num_qubits() || a.num_clbits() != b.num_clbits() ||
        a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto &x = a.ops()[i];
        const auto &y = b.ops()[i];
        if (x.gate != y.gate || x.qubits != y.qubits ||
            x.is_measurement != y.is_measurement || x.clbit != y.clbit ||
            x.params.size() != y.params.size()) {
            return false;
        }
        for (std::size_t k = 0; k < x.params.size(); ++k) {
            if (std::abs(x.params[k] - y.params[k]) > tol) {
                return false;
            }
        }
    }
    return true;
}

struct Violation {
    enum class Kind {
        bad_index,
        duplicate_operand,
        arity_mismatch,
        unknown_gate,
        measurement_not_trailing,
    };
    Kind kind;
    std::size_t op_index;
    std::string message;
};

inline const char *to_string(Violation::Kind kind) {
    switch (kind) {
    case Violation::Kind::bad_index:
        return "bad_index";
    case Violation::Kind::duplicate_operand:
        return "duplicate_operand";
    case Violation::Kind::arity_mismatch:
        return "arity_mismatch";
    case Violation::Kind::unknown_gate:
        return "unknown_gate";
    case Violation::Kind::measurement_not_trailing:
        return "measurement_not_trailing";
    }
    return "?";
}

/// First invariant violation in c, or nullopt when c is well formed.
inline std::optional<Violation> validate(const Circuit &c) {
    bool seen_measurement = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const GateApplication &op = c.ops()[i];
        auto fail = [&](Violation::Kind kind, std::string msg) {
            return Violation{kind, i, "op " + std::to_string(i) + " (" + op.gate +
                                          "): " + std::move(msg)};
        };
        if (op.is_measurement) {
            seen_measurement = true;
            if (op.qubits.size() != 1 || !op.params.empty()) {
                return fail(Violation::Kind::arity_mismatch,
                            "measurement takes one qubit and no parameters");
            }
            if (op.qubits[0] >= c.num_qubits()) {
                return fail(Violation::Kind::bad_index,
                            "qubit index " + std::to_string(op.qubits[0]) +
                                " out of range");
            }
            if (op.clbit >= c.num_clbits()) {
                return fail(Violation::Kind::bad_index,
                            "classical bit " + std::to_string(op.clbit) +
                                " out of range");
            }
            continue;
        }
        if (seen_measurement) {
            return fail(Violation::Kind::measurement_not_trailing,
                        "gate follows a measurement");
        }
        const GateSpec *spec = find_gate(op.gate);
        if (spec == nullptr) {
            return fail(Violation::Kind::unknown_gate, "not in the gate registry");
        }
        if (op.qubits.size() != static_cast<std::size_t>(spec->arity) ||
            op.params.size() != static_cast<std::size_t>(spec->param_count)) {
            return fail(Violation::Kind::arity_mismatch,
                        "expects " + std::to_string(spec->arity) + " qubit(s) and " +
                            std::to_string(spec->param_count) + " parameter(s)");
        }
        for (std::size_t q : op.qubits) {
            if (q >= c.num_qubits()) {
                return fail(Violation::Kind::bad_index,
                            "qubit index " + std::to_string(q) + " out of range");
            }
        }
        if (op.qubits.size() == 2 && op.qubits[0] == op.qubits[1]) {
            return fail(Violation::Kind::duplicate_operand,
                        "qubit " + std::to_string(op.qubits[0]) + " used twice");
        }
        for (double p : op.params) {
            if (!std::isfinite(p)) {
                return fail(Violation::Kind::arity_mismatch, "non-finite parameter");
            }
        }
    }
    return std::nullopt;
}

inline void require_valid(const Circuit &c) {
    if (auto v = validate(c)) {
        throw std::invalid_argument("invalid circuit: " + v->message);
    }
}

} // namespace qcsz
