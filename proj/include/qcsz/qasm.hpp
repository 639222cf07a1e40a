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
 * Reader and writer for a strict OpenQASM 2.0 subset:
 *
 *     program := "OPENQASM 2.0;" include? decl+ stmt*
 *     include := "include \"qelib1.inc\";"
 *     decl    := "qreg q[" INT "];" | "creg c[" INT "];"
 *     stmt    := GATE args ";" | "measure q[" INT "] -> c[" INT "];"
 *              | "barrier" ... ";"
 *     GATE    := id|x|y|z|h|s|sdg|t|tdg|cx|p(expr)|rz(expr)|ry(expr)|rx(expr)
 *     args    := "q[" INT "]" ("," "q[" INT "]")?
 *
 * Angle expressions accept real literals, pi, unary minus/plus, parentheses
 * and + - * / with the usual precedence. Comments run from // to end of line.
 */

#pragma once

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "gates.hpp"

namespace qcsz {

class ParseError : public std::runtime_error {
  public:
    enum class Kind {
        lexical,
        syntax,
        unknown_gate,
        index_out_of_range,
        undeclared_register,
        invalid_operation,
    };

    ParseError(Kind kind, std::size_t line, std::size_t column,
               const std::string &message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          kind_(kind), line_(line), column_(column) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
};

namespace qasm_detail {

enum class Tok { ident, integer, real, string, symbol, arrow, end };

struct Token {
    Tok type;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::end, "", line_, col_});
                return out;
            }
            out.push_back(next());
        }
    }

  private:
    [[nodiscard]] char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char ch = peek();
            if (std::isspace(static_cast<unsigned char>(ch))) {
                advance();
            } else if (ch == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    Token next() {
        const std::size_t line = line_;
        const std::size_t col = col_;
        const std::size_t start = pos_;
        const char ch = peek();
        auto is_digit = [](char c) {
            return std::isdigit(static_cast<unsigned char>(c)) != 0;
        };

        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                advance();
            }
            return {Tok::ident, std::string(src_.substr(start, pos_ - start)), line,
                    col};
        }
        if (is_digit(ch) || (ch == '.' && is_digit(peek(1)))) {
            bool real = false;
            while (is_digit(peek())) {
                advance();
            }
            if (peek() == '.') {
                real = true;
                advance();
                while (is_digit(peek())) {
                    advance();
                }
            }
            if (peek() == 'e' || peek() == 'E') {
                const std::size_t sign = (peek(1) == '+' || peek(1) == '-') ? 1 : 0;
                if (!is_digit(peek(1 + sign))) {
                    throw ParseError(ParseError::Kind::lexical, line_, col_,
                                     "malformed exponent in numeric literal");
                }
                real = true;
                advance();
                if (sign != 0) {
                    advance();
                }
                while (is_digit(peek())) {
                    advance();
                }
            }
            if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
                throw ParseError(ParseError::Kind::lexical, line_, col_,
                                 "unexpected character after numeric literal");
            }
            return {real ? Tok::real : Tok::integer,
                    std::string(src_.substr(start, pos_ - start)), line, col};
        }
        if (ch == '"') {
            advance();
            while (pos_ < src_.size() && peek() != '"' && peek() != '\n') {
                advance();
            }
            if (peek() != '"') {
                throw ParseError(ParseError::Kind::lexical, line, col,
                                 "unterminated string literal");
            }
            advance();
            return {Tok::string, std::string(src_.substr(start + 1, pos_ - start - 2)),
                    line, col};
        }
        if (ch == '-' && peek(1) == '>') {
            advance();
            advance();
            return {Tok::arrow, "->", line, col};
        }
        switch (ch) {
        case ';':
        case ',':
        case '[':
        case ']':
        case '(':
        case ')':
        case '+':
        case '-':
        case '*':
        case '/':
            advance();
            return {Tok::symbol, std::string(1, ch), line, col};
        default:
            break;
        }
        throw ParseError(ParseError::Kind::lexical, line, col,
                         std::string("unexpected character '") + ch + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Circuit parse_program() {
        expect_ident("OPENQASM");
        const Token &version = cur();
        if ((version.type != Tok::real && version.type != Tok::integer) ||
            std::strtod(version.text.c_str(), nullptr) != 2.0) {
            throw error(ParseError::Kind::syntax, version,
                        "only OPENQASM 2.0 is supported");
        }
        ++pos_;
        expect_symbol(";");

        if (is_ident("include")) {
            ++pos_;
            const Token &file = cur();
            if (file.type != Tok::string || file.text != "qelib1.inc") {
                throw error(ParseError::Kind::syntax, file,
                            "expected \"qelib1.inc\" after include");
            }
            ++pos_;
            expect_symbol(";");
        }

        while (is_ident("qreg") || is_ident("creg")) {
            parse_decl();
        }
        if (!num_qubits_) {
            throw error(ParseError::Kind::syntax, cur(),
                        "expected a 'qreg q[n];' declaration");
        }

        std::vector<GateApplication> ops;
        bool seen_measurement = false;
        while (cur().type != Tok::end) {
            parse_statement(ops, seen_measurement);
        }
        return Circuit(*num_qubits_, num_clbits_.value_or(0), std::move(ops));
    }

  private:
    [[nodiscard]] const Token &cur() const { return toks_[pos_]; }

    static ParseError error(ParseError::Kind kind, const Token &at,
                            const std::string &msg) {
        return {kind, at.line, at.column, msg};
    }

    static std::string describe(const Token &t) {
        return t.type == Tok::end ? std::string("end of input")
                                  : "'" + t.text + "'";
    }

    [[nodiscard]] bool is_ident(std::string_view word) const {
        return cur().type == Tok::ident && cur().text == word;
    }

    [[nodiscard]] bool is_symbol(std::string_view sym) const {
        return cur().type == Tok::symbol && cur().text == sym;
    }

    void expect_ident(std::string_view word) {
        if (!is_ident(word)) {
            throw error(ParseError::Kind::syntax, cur(),
                        "expected '" + std::string(word) + "', found " +
                            describe(cur()));
        }
        ++pos_;
    }

    void expect_symbol(std::string_view sym) {
        if (!is_symbol(sym)) {
            throw error(ParseError::Kind::syntax, cur(),
                        "expected '" + std::string(sym) + "', found " +
                            describe(cur()));
        }
        ++pos_;
    }

    std::size_t expect_index() {
        const Token &t = cur();
        if (t.type != Tok::integer) {
            throw error(ParseError::Kind::syntax, t,
                        "expected an integer index, found " + describe(t));
        }
        ++pos_;
        errno = 0;
        const unsigned long long v = std::strtoull(t.text.c_str(), nullptr, 10);
        if (errno == ERANGE || v > 1'000'000'000ULL) {
            throw error(ParseError::Kind::index_out_of_range, t,
                        "integer " + t.text + " is too large");
        }
        return static_cast<std::size_t>(v);
    }

    void parse_decl() {
        const Token &kw = cur();
        const bool quantum = kw.text == "qreg";
        const std::string_view expected_name = quantum ? "q" : "c";
        ++pos_;
        const Token &name = cur();
        if (name.type != Tok::ident || name.text != expected_name) {
            throw error(ParseError::Kind::syntax, name,
                        std::string(quantum ? "quantum" : "classical") +
                            " register must be named '" +
                            std::string(expected_name) + "'");
        }
        ++pos_;
        expect_symbol("[");
        const Token &size_tok = cur();
        const std::size_t size = expect_index();
        expect_symbol("]");
        expect_symbol(";");

        auto &slot = quantum ? num_qubits_ : num_clbits_;
        if (slot) {
            throw error(ParseError::Kind::syntax, kw,
                        "register '" + name.text + "' declared twice");
        }
        if (quantum && size == 0) {
            throw error(ParseError::Kind::syntax, size_tok,
                        "quantum register must have at least one qubit");
        }
        if (quantum && size > kMaxQubits) {
            throw CapacityError("line " + std::to_string(size_tok.line) +
                                ", column " + std::to_string(size_tok.column) +
                                ": register of " + std::to_string(size) +
                                " qubits exceeds the limit of " +
                                std::to_string(kMaxQubits));
        }
        slot = size;
    }

    /// Parses "<reg>[<int>]" and checks the register name and index range.
    std::size_t parse_operand(std::string_view reg, std::size_t reg_size,
                              bool declared) {
        const Token &name = cur();
        if (name.type != Tok::ident) {
            throw error(ParseError::Kind::syntax, name,
                        "expected a register operand, found " + describe(name));
        }
        if (name.text != reg || !declared) {
            throw error(ParseError::Kind::undeclared_register, name,
                        "undeclared register '" + name.text + "'");
        }
        ++pos_;
        expect_symbol("[");
        const Token &idx_tok = cur();
        const std::size_t idx = expect_index();
        expect_symbol("]");
        if (idx >= reg_size) {
            throw error(ParseError::Kind::index_out_of_range, idx_tok,
                        "index " + std::to_string(idx) + " out of range for " +
                            std::string(reg) + "[" + std::to_string(reg_size) +
                            "]");
        }
        return idx;
    }

    void parse_statement(std::vector<GateApplication> &ops,
                         bool &seen_measurement) {
        const Token &head = cur();
        if (head.type != Tok::ident) {
            throw error(ParseError::Kind::syntax, head,
                        "expected a statement, found " + describe(head));
        }
        if (head.text == "qreg" || head.text == "creg") {
            throw error(ParseError::Kind::syntax, head,
                        "declarations must precede all statements");
        }
        if (head.text == "barrier") {
            ++pos_;
            while (!is_symbol(";")) {
                if (cur().type == Tok::end) {
                    throw error(ParseError::Kind::syntax, cur(),
                                "expected ';' to end barrier");
                }
                ++pos_;
            }
            ++pos_;
            return;
        }
        if (head.text == "measure") {
            ++pos_;
            const std::size_t q = parse_operand("q", *num_qubits_, true);
            if (cur().type != Tok::arrow) {
                throw error(ParseError::Kind::syntax, cur(),
                            "expected '->', found " + describe(cur()));
            }
            ++pos_;
            const std::size_t c =
                parse_operand("c", num_clbits_.value_or(0), num_clbits_.has_value());
            expect_symbol(";");
            ops.push_back(GateApplication::measure(q, c));
            seen_measurement = true;
            return;
        }

        const GateSpec *spec = find_gate(head.text);
        if (spec == nullptr) {
            throw error(ParseError::Kind::unknown_gate, head,
                        "unknown gate '" + head.text + "'");
        }
        if (seen_measurement) {
            throw error(ParseError::Kind::invalid_operation, head,
                        "gates may not follow a measurement");
        }
        ++pos_;

        std::vector<double> params;
        if (is_symbol("(")) {
            const Token &open = cur();
            ++pos_;
            params.push_back(parse_expr());
            while (is_symbol(",")) {
                ++pos_;
                params.push_back(parse_expr());
            }
            expect_symbol(")");
            if (!std::isfinite(params.back())) {
                throw error(ParseError::Kind::invalid_operation, open,
                            "angle expression is not finite");
            }
        }
        if (params.size() != static_cast<std::size_t>(spec->param_count)) {
            throw error(ParseError::Kind::syntax, head,
                        "gate '" + head.text + "' takes " +
                            std::to_string(spec->param_count) +
                            " parameter(s), got " + std::to_string(params.size()));
        }

        std::vector<std::size_t> qubits;
        qubits.push_back(parse_operand("q", *num_qubits_, true));
        while (is_symbol(",")) {
            ++pos_;
            const Token &at = cur();
            qubits.push_back(parse_operand("q", *num_qubits_, true));
            if (qubits.size() == 2 && qubits[0] == qubits[1]) {
                throw error(ParseError::Kind::invalid_operation, at,
                            "qubit q[" + std::to_string(qubits[1]) +
                                "] used twice in one gate");
            }
        }
        if (qubits.size() != static_cast<std::size_t>(spec->arity)) {
            throw error(ParseError::Kind::syntax, head,
                        "gate '" + head.text + "' acts on " +
                            std::to_string(spec->arity) + " qubit(s), got " +
                            std::to_string(qubits.size()));
        }
        expect_symbol(";");
        ops.push_back(
            GateApplication::make(head.text, std::move(qubits), std::move(params)));
    }

    // expr := term (('+' | '-') term)*
    double parse_expr() {
        double v = parse_term();
        while (is_symbol("+") || is_symbol("-")) {
            const bool plus = cur().text == "+";
            ++pos_;
            const double rhs = parse_term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    // term := unary (('*' | '/') unary)*
    double parse_term() {
        double v = parse_unary();
        while (is_symbol("*") || is_symbol("/")) {
            const bool mul = cur().text == "*";
            ++pos_;
            const double rhs = parse_unary();
            v = mul ? v * rhs : v / rhs;
        }
        return v;
    }

    double parse_unary() {
        if (is_symbol("-")) {
            ++pos_;
            return -parse_unary();
        }
        if (is_symbol("+")) {
            ++pos_;
            return parse_unary();
        }
        return parse_primary();
    }

    double parse_primary() {
        const Token &t = cur();
        if (t.type == Tok::integer || t.type == Tok::real) {
            ++pos_;
            return std::strtod(t.text.c_str(), nullptr);
        }
        if (t.type == Tok::ident && t.text == "pi") {
            ++pos_;
            return kPi;
        }
        if (is_symbol("(")) {
            ++pos_;
            const double v = parse_expr();
            expect_symbol(")");
            return v;
        }
        throw error(ParseError::Kind::syntax, t,
                    "expected an angle expression, found " + describe(t));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::optional<std::size_t> num_qubits_;
    std::optional<std::size_t> num_clbits_;
};

/// Formats an angle, using a k*pi/4 fraction when it matches one.
inline std::string format_angle(double angle) {
    constexpr double kTol = 1e-12;
    constexpr long kMaxQuarterTurns = 64;
    const double quarters = std::round(angle / (kPi / 4));
    if (std::abs(quarters) <= kMaxQuarterTurns &&
        std::abs(angle - quarters * (kPi / 4)) <= kTol) {
        long k = static_cast<long>(quarters);
        if (k == 0) {
            return "0";
        }
        // Reduce k/4 to lowest terms.
        long den = 4;
        while (den > 1 && k % 2 == 0) {
            k /= 2;
            den /= 2;
        }
        std::string out = k == 1 ? "pi" : k == -1 ? "-pi" : std::to_string(k) + "*pi";
        if (den != 1) {
            out += "/" + std::to_string(den);
        }
        return out;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", angle);
    return buf;
}

} // namespace qasm_detail

/// Parses program text. Errors carry a line and column.
inline Circuit parse_qasm(std::string_view text) {
    qasm_detail::Lexer lexer(text);
    qasm_detail::Parser parser(lexer.tokenize());
    return parser.parse_program();
}

/// Canonical, deterministic program text for c.
inline std::string emit_qasm(const Circuit &c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n"
        << "include \"qelib1.inc\";\n"
        << "qreg q[" << c.num_qubits() << "];\n";
    if (c.num_clbits() > 0) {
        out << "creg c[" << c.num_clbits() << "];\n";
    }
    for (const GateApplication &op : c.ops()) {
        if (op.is_measurement) {
            out << "measure q[" << op.qubits.at(0) << "] -> c[" << op.clbit << "];\n";
            continue;
        }
        out << op.gate;
        if (!op.params.empty()) {
            out << '(';
            for (std::size_t i = 0; i < op.params.size(); ++i) {
                out << (i ? "," : "") << qasm_detail::format_angle(op.params[i]);
            }
            out << ')';
        }
        for (std::size_t i = 0; i < op.qubits.size(); ++i) {
            out << (i ? "," : " ") << "q[" << op.qubits[i] << ']';
        }
        out << ";\n";
    }
    return out.str();
}

} // namespace qcsz
