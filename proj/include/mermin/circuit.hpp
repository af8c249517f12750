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
/// Circuit data model and the GHZ / measurement-setting builders.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mermin/bits.hpp"
#include "mermin/error.hpp"

namespace mermin {

enum class GateKind : std::uint8_t { H, X, S, SDG, T, TDG, CNOT };

[[nodiscard]] constexpr std::string_view mnemonic(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::S: return "s";
    case GateKind::SDG: return "sdg";
    case GateKind::T: return "t";
    case GateKind::TDG: return "tdg";
    case GateKind::CNOT: return "cnot";
    }
    return "?";
}

[[nodiscard]] inline std::optional<GateKind> gate_kind_from_mnemonic(std::string_view text) {
    for (GateKind k : {GateKind::H, GateKind::X, GateKind::S, GateKind::SDG, GateKind::T,
                       GateKind::TDG, GateKind::CNOT}) {
        if (mnemonic(k) == text) {
            return k;
        }
    }
    return std::nullopt;
}

[[nodiscard]] constexpr std::size_t arity(GateKind kind) noexcept {
    return kind == GateKind::CNOT ? 2 : 1;
}

/// Diagonal single-qubit phase gates (S, S†, T, T†).
[[nodiscard]] constexpr bool is_phase(GateKind kind) noexcept {
    return kind == GateKind::S || kind == GateKind::SDG || kind == GateKind::T ||
           kind == GateKind::TDG;
}

[[nodiscard]] constexpr GateKind inverse(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::S: return GateKind::SDG;
    case GateKind::SDG: return GateKind::S;
    case GateKind::T: return GateKind::TDG;
    case GateKind::TDG: return GateKind::T;
    default: return kind;
    }
}

/// A gate application. For CNOT, `qubits[0]` is the control and `qubits[1]`
/// the target; single-qubit gates use only `qubits[0]`.
struct Gate {
    GateKind kind = GateKind::H;
    std::array<std::size_t, 2> qubits{0, 0};

    [[nodiscard]] static Gate single(GateKind kind, std::size_t q) {
        if (kind == GateKind::CNOT) {
            throw Error("CNOT needs a control and a target");
        }
        return Gate{kind, {q, q}};
    }
    [[nodiscard]] static Gate cnot(std::size_t control, std::size_t target) {
        if (control == target) {
            throw Error("CNOT control and target must differ");
        }
        return Gate{GateKind::CNOT, {control, target}};
    }

    [[nodiscard]] std::size_t qubit() const noexcept { return qubits[0]; }
    [[nodiscard]] std::size_t control() const noexcept { return qubits[0]; }
    [[nodiscard]] std::size_t target() const noexcept { return qubits[1]; }
    [[nodiscard]] bool touches(std::size_t q) const noexcept {
        return qubits[0] == q || (kind == GateKind::CNOT && qubits[1] == q);
    }

    friend bool operator==(const Gate &, const Gate &) = default;
};

inline Gate h(std::size_t q) { return Gate::single(GateKind::H, q); }
inline Gate x(std::size_t q) { return Gate::single(GateKind::X, q); }
inline Gate s(std::size_t q) { return Gate::single(GateKind::S, q); }
inline Gate sdg(std::size_t q) { return Gate::single(GateKind::SDG, q); }
inline Gate t(std::size_t q) { return Gate::single(GateKind::T, q); }
inline Gate tdg(std::size_t q) { return Gate::single(GateKind::TDG, q); }
inline Gate cnot(std::size_t control, std::size_t target) { return Gate::cnot(control, target); }

enum class Basis : std::uint8_t { X, Y, Z };

[[nodiscard]] constexpr char basis_char(Basis b) noexcept {
    switch (b) {
    case Basis::X: return 'x';
    case Basis::Y: return 'y';
    case Basis::Z: return 'z';
    }
    return '?';
}

/// Ordered gate list over `n_qubits` wires plus a measurement basis per wire.
class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits)
        : n_qubits_(n_qubits), measure_basis_(n_qubits, Basis::Z) {
        if (n_qubits == 0 || n_qubits > kMaxStateQubits) {
            throw Error("circuit qubit count must be in 1..10, got " + std::to_string(n_qubits));
        }
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<Gate> &gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }
    [[nodiscard]] const std::vector<Basis> &measure_basis() const noexcept {
        return measure_basis_;
    }

    Circuit &append(const Gate &g) {
        validate(g);
        gates_.push_back(g);
        return *this;
    }

    Circuit &set_measure_basis(std::vector<Basis> basis) {
        if (basis.size() != n_qubits_) {
            throw Error("measure basis needs " + std::to_string(n_qubits_) + " entries, got " +
                        std::to_string(basis.size()));
        }
        measure_basis_ = std::move(basis);
        return *this;
    }

    [[nodiscard]] bool measures_z_only() const noexcept {
        return std::all_of(measure_basis_.begin(), measure_basis_.end(),
                           [](Basis b) { return b == Basis::Z; });
    }

    [[nodiscard]] std::size_t count(GateKind kind) const noexcept {
        return static_cast<std::size_t>(std::count_if(
            gates_.begin(), gates_.end(), [kind](const Gate &g) { return g.kind == kind; }));
    }

    void validate(const Gate &g) const {
        if (g.qubits[0] >= n_qubits_ || (g.kind == GateKind::CNOT && g.qubits[1] >= n_qubits_)) {
            throw Error("gate qubit index out of range for a " + std::to_string(n_qubits_) +
                        "-qubit circuit");
        }
        if (g.kind == GateKind::CNOT && g.qubits[0] == g.qubits[1]) {
            throw Error("CNOT control and target must differ");
        }
    }

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    std::size_t n_qubits_;
    std::vector<Gate> gates_;
    std::vector<Basis> measure_basis_;
};

/// Which of the two settings each party measures. Party i uses its primed
/// setting a'_i iff bit (n-1-i) of `prime_mask` is set, so the mask written as
/// an n-character string reads party 0 first ("001" primes the last party).
struct MeasurementSetting {
    std::size_t n_qubits = 0;
    Index prime_mask = 0;

    MeasurementSetting(std::size_t n, Index mask) : n_qubits(n), prime_mask(mask) {
        if (n == 0 || n >= 64 || mask >= dimension(n)) {
            throw Error("prime mask " + std::to_string(mask) + " out of range for " +
                        std::to_string(n) + " parties");
        }
    }

    [[nodiscard]] bool primed(std::size_t party) const noexcept {
        return bit_of(prime_mask, party, n_qubits);
    }
    [[nodiscard]] std::size_t prime_count() const noexcept {
        return static_cast<std::size_t>(std::popcount(prime_mask));
    }
    /// Unprimed settings measure sigma_x, primed ones sigma_y.
    [[nodiscard]] Basis basis(std::size_t party) const noexcept {
        return primed(party) ? Basis::Y : Basis::X;
    }
};

/// Appends `k` quarter-turns of relative phase (k*pi/4) on qubit `q` as
/// floor(k/2) S gates followed by (k mod 2) T gates; `k` is taken mod 8.
inline void append_phase(Circuit &c, int quarter_turns, std::size_t q) {
    const int k = ((quarter_turns % 8) + 8) % 8;
    for (int i = 0; i < k / 2; ++i) {
        c.append(s(q));
    }
    if (k % 2 == 1) {
        c.append(t(q));
    }
}

/// Builds (|0...0> + e^{i*k*pi/4}|1...1>)/sqrt(2): H on `control`, CNOT fan-out
/// from `control` to every other qubit in ascending order, then the phase on
/// `control`.
[[nodiscard]] inline Circuit ghz_circuit(std::size_t n, int quarter_turns, std::size_t control = 0) {
    if (n < 2 || n > kMaxStateQubits) {
        throw Error("GHZ circuit needs 2..10 qubits, got " + std::to_string(n));
    }
    if (control >= n) {
        throw Error("GHZ control qubit out of range");
    }
    Circuit c(n);
    c.append(h(control));
    for (std::size_t q = 0; q < n; ++q) {
        if (q != control) {
            c.append(cnot(control, q));
        }
    }
    append_phase(c, quarter_turns, control);
    return c;
}

/// Angle-based overload; `phase` must be a multiple of pi/4.
[[nodiscard]] inline Circuit ghz_circuit_for_angle(std::size_t n, double phase,
                                                   std::size_t control = 0) {
    constexpr double kQuarter = 0.78539816339744830962; // pi/4
    const double k = phase / kQuarter;
    const double rounded = std::nearbyint(k);
    if (std::abs(k - rounded) > 1e-9) {
        throw Error("GHZ phase must be a multiple of pi/4");
    }
    return ghz_circuit(n, static_cast<int>(std::fmod(rounded, 8.0)), control);
}

/// Basis-change gates that turn a measurement of `b` into a Z measurement:
/// X -> H, Y -> S† then H. The Y rotation maps the +1 eigenstate
/// (|0>+i|1>)/sqrt(2) to |0>, so outcome bit 0 always means eigenvalue +1.
inline void append_basis_change(Circuit &c, Basis b, std::size_t q) {
    switch (b) {
    case Basis::X: c.append(h(q)); break;
    case Basis::Y:
        c.append(sdg(q));
        c.append(h(q));
        break;
    case Basis::Z: break;
    }
}

/// Lowers any X/Y measurement tags into explicit gates; the result measures Z
/// everywhere.
[[nodiscard]] inline Circuit lower_measurement(const Circuit &c) {
    Circuit out = c;
    for (std::size_t q = 0; q < c.n_qubits(); ++q) {
        append_basis_change(out, c.measure_basis()[q], q);
    }
    out.set_measure_basis(std::vector<Basis>(c.n_qubits(), Basis::Z));
    return out;
}

[[nodiscard]] inline Circuit with_setting(const Circuit &c, const MeasurementSetting &setting) {
    if (setting.n_qubits != c.n_qubits()) {
        throw Error("measurement setting and circuit disagree on qubit count");
    }
    Circuit out = c;
    for (std::size_t q = 0; q < c.n_qubits(); ++q) {
        append_basis_change(out, setting.basis(q), q);
    }
    out.set_measure_basis(std::vector<Basis>(c.n_qubits(), Basis::Z));
    return out;
}

} // namespace mermin
