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
/// Lowering passes for a star-topology device.
///
/// The device accepts CNOTs only when their target is one fixed qubit and
/// measures only in Z. `transpile` runs, in this order:
///
///   1. measurement lowering  (X/Y tags -> H / S†H, all tags Z)
///   2. reverse_cnot_pass     CNOT(a->b) = (H_a H_b) CNOT(b->a) (H_a H_b)
///   3. place_phase_pass      free S/T gates onto the most robust qubit
///   4. cancel_adjacent_pass  wire-adjacent H.H, X.X, S.S†, T.T†, CNOT.CNOT
///
/// Passes 1, 2 and 4 preserve the full unitary. Pass 3 preserves the state
/// prepared from |0...0>: a phase gate on a GHZ-like state only multiplies
/// one branch, and that holds for any qubit on which both branches agree.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mermin/circuit.hpp"
#include "mermin/error.hpp"
#include "mermin/statevector.hpp"

namespace mermin {

struct DeviceModel {
    std::size_t n_qubits = 0;
    std::size_t cnot_target = 0;
    /// Qubit indices, most robust first.
    std::vector<std::size_t> robustness_rank;

    DeviceModel(std::size_t n, std::size_t target, std::vector<std::size_t> rank)
        : n_qubits(n), cnot_target(target), robustness_rank(std::move(rank)) {
        validate();
    }

    /// Star centre on qubit 2 (or the last qubit for n < 3), identity ranking.
    [[nodiscard]] static DeviceModel default_for(std::size_t n) {
        std::vector<std::size_t> rank(n);
        std::iota(rank.begin(), rank.end(), std::size_t{0});
        return DeviceModel(n, std::min<std::size_t>(2, n - 1), std::move(rank));
    }

    void validate() const {
        if (n_qubits == 0) {
            throw Error("device needs at least one qubit");
        }
        if (cnot_target >= n_qubits) {
            throw Error("device CNOT target " + std::to_string(cnot_target) +
                        " out of range for " + std::to_string(n_qubits) + " qubits");
        }
        std::vector<std::size_t> sorted = robustness_rank;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] != i) {
                sorted.clear();
                break;
            }
        }
        if (sorted.size() != n_qubits) {
            throw Error("robustness rank must be a permutation of 0.." +
                        std::to_string(n_qubits - 1));
        }
    }
};

struct TranspileReport {
    std::size_t gate_count_before = 0;
    std::size_t gate_count_after = 0;
    /// H gates inserted by CNOT reversal (before any cancellation).
    std::size_t added_h_count = 0;
    std::size_t reversed_cnots = 0;
    std::size_t moved_phase_gates = 0;
    std::size_t cancelled_gates = 0;
    /// Qubit carrying the movable phase gates after placement, if any.
    std::optional<std::size_t> phase_host_qubit;
};

inline void to_json(nlohmann::json &j, const TranspileReport &r) {
    j = nlohmann::json{
        {"gate_count_before", r.gate_count_before},
        {"gate_count_after", r.gate_count_after},
        {"added_h_count", r.added_h_count},
        {"reversed_cnots", r.reversed_cnots},
        {"moved_phase_gates", r.moved_phase_gates},
        {"cancelled_gates", r.cancelled_gates},
        {"phase_host_qubit", r.phase_host_qubit ? nlohmann::json(*r.phase_host_qubit)
                                                : nlohmann::json(nullptr)},
    };
}

namespace detail {

inline void check_device(const Circuit &c, const DeviceModel &d) {
    d.validate();
    if (d.n_qubits != c.n_qubits()) {
        throw Error("device has " + std::to_string(d.n_qubits) + " qubits but circuit has " +
                    std::to_string(c.n_qubits()));
    }
}

[[nodiscard]] inline bool cancels(const Gate &earlier, const Gate &later) {
    if (earlier.kind == GateKind::CNOT || later.kind == GateKind::CNOT) {
        return earlier == later;
    }
    return earlier.qubit() == later.qubit() && inverse(earlier.kind) == later.kind;
}

} // namespace detail

[[nodiscard]] inline Circuit reverse_cnot_pass(const Circuit &c, const DeviceModel &d,
                                               TranspileReport *report = nullptr) {
    detail::check_device(c, d);
    Circuit out(c.n_qubits());
    out.set_measure_basis(c.measure_basis());
    for (const Gate &g : c.gates()) {
        if (g.kind != GateKind::CNOT || g.target() == d.cnot_target) {
            out.append(g);
            continue;
        }
        if (g.control() != d.cnot_target) {
            throw ConstraintError("CNOT " + std::to_string(g.control()) + "->" +
                                  std::to_string(g.target()) + " does not touch CNOT target qubit " +
                                  std::to_string(d.cnot_target) + " (star topology violated)");
        }
        const std::size_t lo = std::min(g.control(), g.target());
        const std::size_t hi = std::max(g.control(), g.target());
        out.append(h(lo)).append(h(hi));
        out.append(cnot(g.target(), g.control()));
        out.append(h(lo)).append(h(hi));
        if (report != nullptr) {
            report->reversed_cnots += 1;
            report->added_h_count += 4;
        }
    }
    return out;
}

/// Removes wire-adjacent inverse pairs until none remain. Gates on other
/// wires between the pair do not block cancellation.
[[nodiscard]] inline Circuit cancel_adjacent_pass(const Circuit &c,
                                                  TranspileReport *report = nullptr) {
    std::vector<Gate> kept;
    kept.reserve(c.size());
    auto last_on_wire = [&kept](std::size_t q) -> std::optional<std::size_t> {
        for (std::size_t i = kept.size(); i-- > 0;) {
            if (kept[i].touches(q)) {
                return i;
            }
        }
        return std::nullopt;
    };
    std::size_t removed = 0;
    for (const Gate &g : c.gates()) {
        const auto prev = last_on_wire(g.qubits[0]);
        bool cancelled = false;
        if (prev && detail::cancels(kept[*prev], g)) {
            cancelled = g.kind != GateKind::CNOT || last_on_wire(g.target()) == prev;
        }
        if (cancelled) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(*prev));
            removed += 2;
        } else {
            kept.push_back(g);
        }
    }
    Circuit out(c.n_qubits());
    for (const Gate &g : kept) {
        out.append(g);
    }
    out.set_measure_basis(c.measure_basis());
    if (report != nullptr) {
        report->cancelled_gates += removed;
    }
    return out;
}

/// Moves each S/S†/T/T† whose input state (from |0...0>) is supported on at
/// most two basis states, i.e. GHZ-like, to the most robust qubit on which
/// both branches carry the same bit as the gate's current qubit. The gate
/// keeps its position in the list; only its qubit changes.
[[nodiscard]] inline Circuit place_phase_pass(const Circuit &c, const DeviceModel &d,
                                              TranspileReport *report = nullptr) {
    detail::check_device(c, d);
    constexpr double kSupportTol = 1e-12;
    const std::size_t n = c.n_qubits();
    Circuit out(n);
    out.set_measure_basis(c.measure_basis());
    Statevector state(n);
    for (Gate g : c.gates()) {
        if (is_phase(g.kind)) {
            std::vector<Index> support;
            for (Index i = 0; i < state.amplitudes().size() && support.size() <= 2; ++i) {
                if (std::norm(state[i]) > kSupportTol) {
                    support.push_back(i);
                }
            }
            if (support.size() == 2) {
                const std::size_t from = g.qubit();
                for (std::size_t q : d.robustness_rank) {
                    const bool eligible =
                        bit_of(support[0], q, n) == bit_of(support[0], from, n) &&
                        bit_of(support[1], q, n) == bit_of(support[1], from, n);
                    if (eligible) {
                        if (q != from) {
                            g.qubits = {q, q};
                            if (report != nullptr) {
                                report->moved_phase_gates += 1;
                            }
                        }
                        if (report != nullptr) {
                            report->phase_host_qubit = q;
                        }
                        break;
                    }
                }
            }
        }
        out.append(g);
        state.apply(g);
    }
    return out;
}

/// Throws ConstraintError unless every CNOT targets the device's target
/// qubit and every measurement is in Z.
inline void check_constraints(const Circuit &c, const DeviceModel &d) {
    detail::check_device(c, d);
    for (const Gate &g : c.gates()) {
        if (g.kind == GateKind::CNOT && g.target() != d.cnot_target) {
            throw ConstraintError("CNOT " + std::to_string(g.control()) + "->" +
                                  std::to_string(g.target()) + " does not target qubit " +
                                  std::to_string(d.cnot_target));
        }
    }
    if (!c.measures_z_only()) {
        throw ConstraintError("device measures only in the Z basis");
    }
}

struct TranspileResult {
    Circuit circuit;
    TranspileReport report;
};

[[nodiscard]] inline TranspileResult transpile(const Circuit &c, const DeviceModel &d) {
    TranspileReport report;
    report.gate_count_before = c.size();
    Circuit lowered = lower_measurement(c);
    Circuit reversed = reverse_cnot_pass(lowered, d, &report);
    Circuit placed = place_phase_pass(reversed, d, &report);
    Circuit out = cancel_adjacent_pass(placed, &report);
    check_constraints(out, d);
    report.gate_count_after = out.size();
    return {std::move(out), report};
}

} // namespace mermin
