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
/// Dense pure-state simulation, Pauli strings and Z-basis outcome
/// distributions.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mermin/bits.hpp"
#include "mermin/circuit.hpp"
#include "mermin/error.hpp"
#include "mermin/kernels.hpp"

namespace mermin {

enum class Pauli : std::uint8_t { I, X, Y, Z };

[[nodiscard]] constexpr char pauli_char(Pauli p) noexcept {
    switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
    }
    return '?';
}

/// Tensor product of single-qubit Paulis; `ops[q]` acts on qubit q.
class PauliString {
  public:
    explicit PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {
        if (ops_.empty()) {
            throw Error("Pauli string must act on at least one qubit");
        }
    }

    /// Parses "XXY", "IZ", ... (case-insensitive); character q acts on qubit q.
    [[nodiscard]] static PauliString parse(std::string_view text) {
        std::vector<Pauli> ops;
        for (char c : text) {
            switch (c) {
            case 'I': case 'i': case '_': ops.push_back(Pauli::I); break;
            case 'X': case 'x': ops.push_back(Pauli::X); break;
            case 'Y': case 'y': ops.push_back(Pauli::Y); break;
            case 'Z': case 'z': ops.push_back(Pauli::Z); break;
            default: throw Error("invalid Pauli character '" + std::string(1, c) + "'");
            }
        }
        return PauliString(std::move(ops));
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return ops_.size(); }
    [[nodiscard]] Pauli operator[](std::size_t q) const { return ops_.at(q); }
    [[nodiscard]] const std::vector<Pauli> &ops() const noexcept { return ops_; }

    [[nodiscard]] std::string str() const {
        std::string out;
        for (Pauli p : ops_) {
            out.push_back(pauli_char(p));
        }
        return out;
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;

  private:
    std::vector<Pauli> ops_;
};

namespace kernels {

/// amps <- P amps, using X|0>=|1>, Y|0>=i|1>, Y|1>=-i|0>, Z|1>=-|1>.
inline void apply_pauli(std::span<Complex> amps, std::size_t n, const PauliString &p,
                        std::size_t offset = 0, bool conjugate = false) {
    const Complex i_unit = conjugate ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
    for (std::size_t q = 0; q < p.n_qubits(); ++q) {
        const std::size_t wire = q + offset;
        switch (p[q]) {
        case Pauli::I: break;
        case Pauli::X: apply_1q(amps, n, wire, gates::matrix(GateKind::X)); break;
        case Pauli::Y: apply_1q(amps, n, wire, Mat2{0.0, -i_unit, i_unit, 0.0}); break;
        case Pauli::Z: apply_phase(amps, n, wire, Complex{-1.0, 0.0}); break;
        }
    }
}

} // namespace kernels

/// Pure state of 1..10 qubits. Index bit order follows bits.hpp (qubit 0 is
/// the most significant bit).
class Statevector {
  public:
    /// |0...0>
    explicit Statevector(std::size_t n_qubits) : n_qubits_(check_n(n_qubits)) {
        amps_.assign(dimension(n_qubits_), Complex{});
        amps_[0] = 1.0;
    }

    /// Takes ownership of explicit amplitudes; the vector must be normalised.
    Statevector(std::size_t n_qubits, std::vector<Complex> amplitudes)
        : n_qubits_(check_n(n_qubits)), amps_(std::move(amplitudes)) {
        if (amps_.size() != dimension(n_qubits_)) {
            throw Error("amplitude array length must be 2^n");
        }
        if (std::abs(norm_squared() - 1.0) > 1e-10) {
            throw Error("statevector is not normalised");
        }
    }

    [[nodiscard]] static Statevector basis_state(std::size_t n_qubits, Index index) {
        Statevector out(n_qubits);
        if (index >= out.amps_.size()) {
            throw Error("basis index out of range");
        }
        out.amps_[0] = 0.0;
        out.amps_[index] = 1.0;
        return out;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Complex operator[](Index i) const { return amps_.at(i); }

    [[nodiscard]] double norm_squared() const noexcept {
        double acc = 0.0;
        for (const Complex &a : amps_) {
            acc += std::norm(a);
        }
        return acc;
    }

    Statevector &apply(const Gate &g) {
        if (g.qubits[0] >= n_qubits_ || (g.kind == GateKind::CNOT && g.qubits[1] >= n_qubits_)) {
            throw Error("gate qubit index out of range");
        }
        if (g.kind == GateKind::CNOT && g.control() == g.target()) {
            throw Error("CNOT control and target must differ");
        }
        kernels::apply_gate(amps_, n_qubits_, g);
        return *this;
    }

    Statevector &apply(const Circuit &c) {
        if (c.n_qubits() != n_qubits_) {
            throw Error("circuit and state disagree on qubit count");
        }
        for (const Gate &g : c.gates()) {
            kernels::apply_gate(amps_, n_qubits_, g);
        }
        return *this;
    }

  private:
    static std::size_t check_n(std::size_t n) {
        if (n == 0 || n > kMaxStateQubits) {
            throw Error("statevector qubit count must be in 1..10, got " + std::to_string(n));
        }
        return n;
    }

    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

[[nodiscard]] inline Statevector apply_gate(Statevector state, const Gate &g) {
    state.apply(g);
    return state;
}

/// State prepared by `c` from |0...0>. Measurement tags are not applied.
[[nodiscard]] inline Statevector simulate(const Circuit &c) {
    Statevector out(c.n_qubits());
    out.apply(c);
    return out;
}

[[nodiscard]] inline Complex inner_product(const Statevector &a, const Statevector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw Error("inner product of states with different qubit counts");
    }
    Complex acc{};
    for (Index i = 0; i < a.amplitudes().size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

/// |<a|b>|^2, insensitive to global phase.
[[nodiscard]] inline double fidelity(const Statevector &a, const Statevector &b) {
    return std::norm(inner_product(a, b));
}

[[nodiscard]] inline double pauli_expectation(const Statevector &state, const PauliString &p) {
    if (p.n_qubits() != state.n_qubits()) {
        throw Error("Pauli string and state disagree on qubit count");
    }
    std::vector<Complex> work(state.amplitudes().begin(), state.amplitudes().end());
    kernels::apply_pauli(work, state.n_qubits(), p);
    Complex acc{};
    for (Index i = 0; i < work.size(); ++i) {
        acc += std::conj(state[i]) * work[i];
    }
    return acc.real();
}

/// Z-basis outcome probabilities indexed by bitstring (qubit 0 leftmost).
class OutcomeDistribution {
  public:
    OutcomeDistribution(std::size_t n_qubits, std::vector<double> probabilities)
        : n_qubits_(n_qubits), probs_(std::move(probabilities)) {
        if (n_qubits == 0 || n_qubits >= 63 || probs_.size() != dimension(n_qubits)) {
            throw Error("distribution must have 2^n entries");
        }
        double total = 0.0;
        for (double &p : probs_) {
            if (p < -1e-12 || p > 1.0 + 1e-12 || !std::isfinite(p)) {
                throw Error("probability outside [0, 1]");
            }
            p = std::clamp(p, 0.0, 1.0);
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw Error("probabilities do not sum to 1");
        }
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::span<const double> probabilities() const noexcept { return probs_; }
    [[nodiscard]] double operator[](Index i) const { return probs_.at(i); }
    [[nodiscard]] double at(std::string_view bits) const {
        if (bits.size() != n_qubits_) {
            throw Error("bitstring length does not match the distribution");
        }
        return probs_.at(from_bitstring(bits));
    }

    /// Even-parity mass minus odd-parity mass.
    [[nodiscard]] double parity_expectation() const noexcept {
        double acc = 0.0;
        for (Index i = 0; i < probs_.size(); ++i) {
            acc += parity_sign(i) * probs_[i];
        }
        return acc;
    }

  private:
    std::size_t n_qubits_;
    std::vector<double> probs_;
};

[[nodiscard]] inline OutcomeDistribution outcome_distribution(const Statevector &state) {
    std::vector<double> probs;
    probs.reserve(state.amplitudes().size());
    for (const Complex &a : state.amplitudes()) {
        probs.push_back(std::norm(a));
    }
    return OutcomeDistribution(state.n_qubits(), std::move(probs));
}

/// Ideal outcome distribution of a circuit, honouring its measurement tags.
[[nodiscard]] inline OutcomeDistribution outcome_distribution(const Circuit &c) {
    return outcome_distribution(simulate(lower_measurement(c)));
}

} // namespace mermin
