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
 * The `qc` command line: simulate, decompose, verify and bloch.
 *
 * Exit codes: 0 success / equivalent, 1 verified not equivalent, 2 input
 * error, 3 capacity error. stdout carries exactly one JSON document (or,
 * for decompose, one program text); diagnostics go to stderr.
 */

#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcsz/circuit.hpp"
#include "qcsz/decomposer.hpp"
#include "qcsz/gates.hpp"
#include "qcsz/numerics.hpp"
#include "qcsz/qasm.hpp"
#include "qcsz/simulator.hpp"

namespace qcsz::cli {

enum ExitCode : int {
    kOk = 0,
    kNotEquivalent = 1,
    kInputError = 2,
    kCapacityError = 3,
};

/// Input problems that map to exit code 2.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Built-in reference matrices for verify and decompose.
inline std::optional<ComplexMatrix> reference_matrix(std::string_view name) {
    if (name == "csqrtz") {
        return ComplexMatrix::diagonal({1.0, 1.0, 1.0, kI});
    }
    if (name == "cz") {
        return ComplexMatrix::diagonal({1.0, 1.0, 1.0, -1.0});
    }
    if (name == "identity2") {
        return ComplexMatrix::identity(2);
    }
    if (name == "identity4") {
        return ComplexMatrix::identity(4);
    }
    if (const GateSpec *spec = find_gate(name); spec && spec->param_count == 0) {
        return spec->matrix({});
    }
    return std::nullopt;
}

/// Parses one "re+imj" entry. Bare reals ("0.5") and bare imaginaries
/// ("-1j") are accepted too.
inline Complex parse_complex_entry(const std::string &tok) {
    const char *begin = tok.c_str();
    const char *end = begin + tok.size();
    char *p = nullptr;
    const double first = std::strtod(begin, &p);
    if (p == begin) {
        throw InputError("malformed matrix entry '" + tok + "'");
    }
    if (p == end) {
        return {first, 0.0};
    }
    if ((*p == 'j' || *p == 'i') && p + 1 == end) {
        return {0.0, first};
    }
    if (*p != '+' && *p != '-') {
        throw InputError("malformed matrix entry '" + tok + "'");
    }
    const char *im_begin = p;
    const double second = std::strtod(im_begin, &p);
    if (p == im_begin || p + 1 != end || (*p != 'j' && *p != 'i')) {
        throw InputError("malformed matrix entry '" + tok + "'");
    }
    return {first, second};
}

/// Plain-text matrix: one row per line, whitespace-separated "re+imj"
/// entries. Blank lines and lines starting with '#' are skipped.
inline ComplexMatrix parse_matrix_text(std::string_view text) {
    std::vector<std::vector<Complex>> rows;
    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string tok;
        std::vector<Complex> row;
        while (fields >> tok) {
            if (row.empty() && tok[0] == '#') {
                break;
            }
            row.push_back(parse_complex_entry(tok));
        }
        if (!row.empty()) {
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) {
        throw InputError("matrix file is empty");
    }
    std::vector<Complex> entries;
    for (const auto &row : rows) {
        if (row.size() != rows.size()) {
            throw InputError("matrix must be square: " + std::to_string(rows.size()) +
                             " rows but a row has " + std::to_string(row.size()) +
                             " entries");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    try {
        return {rows.size(), std::move(entries)};
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
}

inline std::string read_source(const std::string &path, std::istream &in) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw InputError("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

inline Circuit load_circuit(const std::string &path, std::istream &in) {
    const std::string text = read_source(path, in);
    try {
        Circuit c = parse_qasm(text);
        if (auto v = validate(c)) {
            throw InputError(v->message);
        }
        return c;
    } catch (const ParseError &e) {
        throw InputError((path.empty() || path == "-" ? std::string("<stdin>") : path) +
                         ": " + e.what());
    }
}

/// Drops the trailing measurements so the remaining ops form a unitary.
inline Circuit without_measurements(const Circuit &c) {
    std::vector<GateApplication> ops;
    for (const auto &op : c.ops()) {
        if (!op.is_measurement) {
            ops.push_back(op);
        }
    }
    return Circuit(c.num_qubits(), c.num_clbits(), std::move(ops));
}

inline nlohmann::json bloch_json(const StateVector &state) {
    nlohmann::json list = nlohmann::json::array();
    for (std::size_t q = 0; q < state.num_qubits(); ++q) {
        const BlochVector b = bloch_vector(state, q);
        // "+ 0.0" folds -0.0 into 0.0 for cleaner output.
        list.push_back({{"qubit", q}, {"x", b.x + 0.0}, {"y", b.y + 0.0},
                        {"z", b.z + 0.0}, {"purity", b.purity}});
    }
    return list;
}

/// The simulate report: amplitudes, probabilities, optional counts and
/// Bloch coordinates.
inline nlohmann::json run_report(const StateVector &state, std::uint64_t shots,
                                 std::uint64_t seed, bool with_bloch) {
    nlohmann::json report;
    report["num_qubits"] = state.num_qubits();
    nlohmann::json amps = nlohmann::json::array();
    for (const Complex &a : state.amplitudes()) {
        amps.push_back({a.real() + 0.0, a.imag() + 0.0});
    }
    report["amplitudes"] = std::move(amps);
    report["probabilities"] = probabilities(state);
    if (shots > 0) {
        const MeasurementCounts mc = sample(state, shots, seed);
        report["counts"] = {{"shots", mc.shots}, {"counts", mc.counts}};
    }
    if (with_bloch) {
        report["bloch"] = bloch_json(state);
    }
    return report;
}

inline StateVector initial_state(const Circuit &c, const std::string &bits) {
    if (bits.size() != c.num_qubits()) {
        throw InputError("--init has " + std::to_string(bits.size()) +
                         " bits but the register has " +
                         std::to_string(c.num_qubits()) + " qubits");
    }
    try {
        return basis_state(bits);
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
}

inline ComplexMatrix resolve_reference(const std::string &name,
                                       const std::string &matrix_path,
                                       std::istream &in) {
    if (!matrix_path.empty()) {
        return parse_matrix_text(read_source(matrix_path, in));
    }
    if (auto m = reference_matrix(name)) {
        return *m;
    }
    throw InputError("unknown reference '" + name + "'");
}

/// Runs the CLI on args (args[0] is the program name).
inline int run(const std::vector<std::string> &args, std::istream &in,
               std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum circuit simulator and controlled-gate transpiler", "qc"};
    app.require_subcommand(1);

    std::string file;
    std::string init;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    bool with_bloch = false;
    auto *simulate = app.add_subcommand("simulate", "Run a circuit on a basis state");
    simulate->add_option("file", file, "Program file ('-' for stdin)")->required();
    simulate->add_option("--init", init, "Initial bit string, qubit 0 first")
        ->required();
    simulate->add_option("--shots", shots, "Measurement shots (0 disables)");
    simulate->add_option("--seed", seed, "Sampler seed");
    simulate->add_flag("--bloch", with_bloch, "Include per-qubit Bloch vectors");

    std::string gate_name;
    std::string matrix_path;
    std::size_t control = 0;
    std::size_t target = 1;
    std::size_t num_qubits = 2;
    auto *decompose =
        app.add_subcommand("decompose", "Synthesize a controlled single-qubit gate");
    decompose->add_option("gate", gate_name, "Built-in single-qubit gate name");
    decompose->add_option("--matrix", matrix_path, "2x2 matrix file");
    decompose->add_option("--control", control, "Control qubit");
    decompose->add_option("--target", target, "Target qubit");
    decompose->add_option("--qubits", num_qubits, "Register size");

    std::string ref_name;
    std::string ref_matrix;
    bool exact = false;
    bool phase = false;
    double tol = kDefaultTol;
    auto *verify = app.add_subcommand("verify", "Compare a circuit with a reference");
    verify->add_option("file", file, "Program file ('-' or omitted for stdin)");
    verify->add_option("--ref", ref_name, "Built-in reference name");
    verify->add_option("--matrix", ref_matrix, "Reference matrix file");
    auto *exact_flag = verify->add_flag("--exact", exact, "Elementwise comparison");
    verify->add_flag("--phase", phase, "Comparison up to global phase")
        ->excludes(exact_flag);
    verify->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

    auto *bloch = app.add_subcommand("bloch", "Per-qubit Bloch coordinates");
    bloch->add_option("file", file, "Program file ('-' for stdin)")->required();
    bloch->add_option("--init", init, "Initial bit string, qubit 0 first")->required();

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (simulate->parsed()) {
            const Circuit c = load_circuit(file, in);
            const StateVector state = qcsz::run(c, initial_state(c, init));
            out << run_report(state, shots, seed, with_bloch).dump(2) << '\n';
            return kOk;
        }
        if (bloch->parsed()) {
            const Circuit c = load_circuit(file, in);
            const StateVector state = qcsz::run(c, initial_state(c, init));
            out << bloch_json(state).dump(2) << '\n';
            return kOk;
        }
        if (decompose->parsed()) {
            if (gate_name.empty() == matrix_path.empty()) {
                throw InputError("decompose needs exactly one of <gate> or --matrix");
            }
            const ComplexMatrix u = resolve_reference(gate_name, matrix_path, in);
            if (u.dim() != 2) {
                throw InputError("decompose needs a single-qubit (2x2) gate");
            }
            const double dev = unitarity_deviation(u);
            if (dev > kDefaultTol) {
                throw InputError("matrix is not unitary: max deviation " +
                                 std::to_string(dev));
            }
            if (num_qubits > kMaxQubits) {
                throw CapacityError("register of " + std::to_string(num_qubits) +
                                    " qubits exceeds the limit of " +
                                    std::to_string(kMaxQubits));
            }
            if (control == target || control >= num_qubits || target >= num_qubits) {
                throw InputError("--control and --target must be distinct qubits "
                                 "inside the register");
            }
            const Circuit c = discretize(
                synthesize_controlled(abc_decompose(u), control, target, num_qubits));
            out << emit_qasm(c);
            return kOk;
        }
        if (verify->parsed()) {
            if (ref_name.empty() == ref_matrix.empty()) {
                throw InputError("verify needs exactly one of --ref or --matrix");
            }
            const Circuit c = without_measurements(load_circuit(file, in));
            const ComplexMatrix ref = resolve_reference(ref_name, ref_matrix, in);
            if (c.num_qubits() > kMaxUnitaryQubits) {
                throw CapacityError("verify: " + std::to_string(c.num_qubits()) +
                                    " qubits exceeds the limit of " +
                                    std::to_string(kMaxUnitaryQubits));
            }
            if (ref.dim() != (std::size_t{1} << c.num_qubits())) {
                throw InputError("reference is " + std::to_string(ref.dim()) + "x" +
                                 std::to_string(ref.dim()) + " but the circuit has " +
                                 std::to_string(c.num_qubits()) + " qubits");
            }
            const CompareMode mode =
                phase ? CompareMode::up_to_global_phase : CompareMode::exact;
            const EquivalenceReport r = verify_against(c, ref, tol, mode);
            nlohmann::json report = {
                {"equivalent", r.equivalent},
                {"mode", phase ? "phase" : "exact"},
                {"phase", r.phase},
                {"max_abs_deviation", r.max_abs_deviation},
                {"tolerance", tol},
            };
            out << report.dump(2) << '\n';
            return r.equivalent ? kOk : kNotEquivalent;
        }
    } catch (const CapacityError &e) {
        err << "error: " << e.what() << '\n';
        return kCapacityError;
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

} // namespace qcsz::cli
