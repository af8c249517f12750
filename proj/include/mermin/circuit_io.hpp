// Copyright 2026 The mermin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// Line-oriented circuit text format.
///
///     # comment
///     qubits 3
///     h 0
///     cnot 0 1          (control first)
///     measure x y z     (optional, must be the last statement)
///
/// Mnemonics are lowercase: h x s sdg t tdg cnot. `#` starts a comment that
/// runs to the end of the line. Serialization always emits the measure line.

#pragma once

#include <charconv>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mermin/circuit.hpp"
#include "mermin/error.hpp"

namespace mermin {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

inline std::optional<std::size_t> parse_index(std::string_view token) {
    std::size_t value = 0;
    const auto *end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

} // namespace detail

[[nodiscard]] inline Circuit parse_circuit(std::string_view text) {
    std::optional<Circuit> circuit;
    bool measured = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto tokens = detail::split_ws(line);
        if (tokens.empty()) {
            continue;
        }
        const std::string_view head = tokens[0];

        if (!circuit) {
            if (head != "qubits" || tokens.size() != 2) {
                throw ParseError("expected 'qubits N' header", line_no);
            }
            const auto n = detail::parse_index(tokens[1]);
            if (!n || *n == 0 || *n > kMaxStateQubits) {
                throw ParseError("qubit count must be in 1..10", line_no);
            }
            circuit.emplace(*n);
            continue;
        }
        if (measured) {
            throw ParseError("statement after the measure line", line_no);
        }
        if (head == "qubits") {
            throw ParseError("duplicate 'qubits' header", line_no);
        }
        if (head == "measure") {
            if (tokens.size() - 1 != circuit->n_qubits()) {
                throw ParseError("qubit count mismatch: measure lists " +
                                     std::to_string(tokens.size() - 1) + " bases for " +
                                     std::to_string(circuit->n_qubits()) + " qubits",
                                 line_no);
            }
            std::vector<Basis> basis;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (tokens[i] == "x") {
                    basis.push_back(Basis::X);
                } else if (tokens[i] == "y") {
                    basis.push_back(Basis::Y);
                } else if (tokens[i] == "z") {
                    basis.push_back(Basis::Z);
                } else {
                    throw ParseError("unknown basis '" + std::string(tokens[i]) + "'", line_no);
                }
            }
            circuit->set_measure_basis(std::move(basis));
            measured = true;
            continue;
        }

        const auto kind = gate_kind_from_mnemonic(head);
        if (!kind) {
            throw ParseError("unknown mnemonic '" + std::string(head) + "'", line_no);
        }
        if (tokens.size() - 1 != arity(*kind)) {
            throw ParseError("'" + std::string(head) + "' takes " + std::to_string(arity(*kind)) +
                                 " qubit index(es)",
                             line_no);
        }
        std::vector<std::size_t> qubits;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            const auto q = detail::parse_index(tokens[i]);
            if (!q) {
                throw ParseError("bad index '" + std::string(tokens[i]) + "'", line_no);
            }
            if (*q >= circuit->n_qubits()) {
                throw ParseError("bad index " + std::to_string(*q) + " (circuit has " +
                                     std::to_string(circuit->n_qubits()) + " qubits)",
                                 line_no);
            }
            qubits.push_back(*q);
        }
        if (*kind == GateKind::CNOT) {
            if (qubits[0] == qubits[1]) {
                throw ParseError("duplicate qubit", line_no);
            }
            circuit->append(cnot(qubits[0], qubits[1]));
        } else {
            circuit->append(Gate::single(*kind, qubits[0]));
        }
    }
    if (!circuit) {
        throw ParseError("missing 'qubits N' header", line_no);
    }
    return *std::move(circuit);
}

[[nodiscard]] inline std::string serialize_circuit(const Circuit &c) {
    std::ostringstream out;
    out << "qubits " << c.n_qubits() << '\n';
    for (const Gate &g : c.gates()) {
        out << mnemonic(g.kind) << ' ' << g.qubits[0];
        if (g.kind == GateKind::CNOT) {
            out << ' ' << g.qubits[1];
        }
        out << '\n';
    }
    out << "measure";
    for (Basis b : c.measure_basis()) {
        out << ' ' << basis_char(b);
    }
    out << '\n';
    return out.str();
}

} // namespace mermin
