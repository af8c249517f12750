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
/// Mixed-state simulation: density matrices and Kraus channels.
///
/// The matrix is stored row-major, so entry (r, c) sits at r * 2^n + c. Seen
/// as a vector over 2n qubits, row qubit q is wire q and column qubit q is
/// wire n + q; left-multiplying by U is U on the row wires, right-multiplying
/// by U† is conj(U) on the column wires.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mermin/bits.hpp"
#include "mermin/circuit.hpp"
#include "mermin/error.hpp"
#include "mermin/kernels.hpp"
#include "mermin/statevector.hpp"

namespace mermin {

inline constexpr std::size_t kMaxDensityQubits = 6;

/// Completely-positive trace-preserving map on one or two qubits, given by
/// its Kraus operators.
class NoiseChannel {
  public:
    using Kraus = std::variant<Mat2, Mat4>;

    explicit NoiseChannel(std::vector<Mat2> kraus) : arity_(1) {
        for (auto &k : kraus) {
            kraus_.emplace_back(k);
        }
        check_trace_preserving();
    }
    explicit NoiseChannel(std::vector<Mat4> kraus) : arity_(2) {
        for (auto &k : kraus) {
            kraus_.emplace_back(k);
        }
        check_trace_preserving();
    }

    /// rho -> (1-p) rho + p * Tr_q(rho) (x) I/2^k on `arity` qubits.
    [[nodiscard]] static NoiseChannel depolarizing(double p, std::size_t arity) {
        check_probability(p, "depolarizing probability");
        const std::array<Mat2, 4> paulis{
            Mat2{1.0, 0.0, 0.0, 1.0},
            gates::matrix(GateKind::X),
            Mat2{0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0},
            Mat2{1.0, 0.0, 0.0, -1.0},
        };
        if (arity == 1) {
            std::vector<Mat2> kraus;
            for (std::size_t i = 0; i < 4; ++i) {
                const double w = (i == 0) ? 1.0 - 3.0 * p / 4.0 : p / 4.0;
                Mat2 k = paulis[i];
                for (auto &e : k) {
                    e *= std::sqrt(w);
                }
                kraus.push_back(k);
            }
            return NoiseChannel(std::move(kraus));
        }
        if (arity == 2) {
            std::vector<Mat4> kraus;
            for (std::size_t a = 0; a < 4; ++a) {
                for (std::size_t b = 0; b < 4; ++b) {
                    const double w = (a == 0 && b == 0) ? 1.0 - 15.0 * p / 16.0 : p / 16.0;
                    const double scale = std::sqrt(w);
                    Mat4 k{};
                    for (std::size_t r = 0; r < 4; ++r) {
                        for (std::size_t c = 0; c < 4; ++c) {
                            k[r * 4 + c] =
                                scale * paulis[a][(r >> 1U) * 2 + (c >> 1U)] * paulis[b][(r & 1U) * 2 + (c & 1U)];
                        }
                    }
                    kraus.push_back(k);
                }
            }
            return NoiseChannel(std::move(kraus));
        }
        throw Error("depolarizing channel arity must be 1 or 2");
    }

    /// X applied with probability p.
    [[nodiscard]] static NoiseChannel bit_flip(double p) {
        check_probability(p, "bit-flip probability");
        Mat2 keep{std::sqrt(1.0 - p), 0.0, 0.0, std::sqrt(1.0 - p)};
        Mat2 flip{0.0, std::sqrt(p), std::sqrt(p), 0.0};
        return NoiseChannel(std::vector<Mat2>{keep, flip});
    }

    [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
    [[nodiscard]] const std::vector<Kraus> &kraus() const noexcept { return kraus_; }

  private:
    static void check_probability(double p, const char *what) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(std::string(what) + " must lie in [0, 1]");
        }
    }

    void check_trace_preserving() const {
        if (kraus_.empty()) {
            throw Error("channel needs at least one Kraus operator");
        }
        const std::size_t d = arity_ == 1 ? 2 : 4;
        std::vector<Complex> sum(d * d);
        for (const auto &k : kraus_) {
            std::visit(
                [&](const auto &m) {
                    for (std::size_t r = 0; r < d; ++r) {
                        for (std::size_t c = 0; c < d; ++c) {
                            for (std::size_t i = 0; i < d; ++i) {
                                sum[r * d + c] += std::conj(m[i * d + r]) * m[i * d + c];
                            }
                        }
                    }
                },
                k);
        }
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                const Complex expected = (r == c) ? 1.0 : 0.0;
                if (std::abs(sum[r * d + c] - expected) > 1e-10) {
                    throw Error("Kraus operators are not trace preserving");
                }
            }
        }
    }

    std::size_t arity_;
    std::vector<Kraus> kraus_;
};

class DensityMatrix {
  public:
    /// |0...0><0...0|
    explicit DensityMatrix(std::size_t n_qubits) : n_qubits_(check_n(n_qubits)) {
        entries_.assign(dimension(2 * n_qubits_), Complex{});
        entries_[0] = 1.0;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] Index dim() const noexcept { return dimension(n_qubits_); }
    [[nodiscard]] Complex operator()(Index r, Index c) const {
        return entries_.at(r * dim() + c);
    }
    [[nodiscard]] std::span<const Complex> entries() const noexcept { return entries_; }

    [[nodiscard]] static DensityMatrix from_state(const Statevector &psi) {
        DensityMatrix out(psi.n_qubits());
        const Index d = out.dim();
        for (Index r = 0; r < d; ++r) {
            for (Index c = 0; c < d; ++c) {
                out.entries_[r * d + c] = psi[r] * std::conj(psi[c]);
            }
        }
        return out;
    }

    DensityMatrix &apply(const Gate &g) {
        if (g.qubits[0] >= n_qubits_ || (g.kind == GateKind::CNOT && g.qubits[1] >= n_qubits_)) {
            throw Error("gate qubit index out of range");
        }
        kernels::apply_gate(entries_, 2 * n_qubits_, g);
        kernels::apply_gate_conj(entries_, 2 * n_qubits_, g, n_qubits_);
        return *this;
    }

    DensityMatrix &apply(const NoiseChannel &channel, std::span<const std::size_t> qubits) {
        if (qubits.size() != channel.arity()) {
            throw Error("channel arity does not match the number of target qubits");
        }
        for (std::size_t q : qubits) {
            if (q >= n_qubits_) {
                throw Error("channel qubit index out of range");
            }
        }
        if (channel.arity() == 2 && qubits[0] == qubits[1]) {
            throw Error("two-qubit channel needs distinct qubits");
        }
        const std::size_t wires = 2 * n_qubits_;
        std::vector<Complex> acc(entries_.size());
        std::vector<Complex> work;
        for (const auto &kraus : channel.kraus()) {
            work = entries_;
            if (const auto *k1 = std::get_if<Mat2>(&kraus)) {
                kernels::apply_1q(work, wires, qubits[0], *k1);
                kernels::apply_1q(work, wires, qubits[0] + n_qubits_, gates::conj(*k1));
            } else {
                const auto &k2 = std::get<Mat4>(kraus);
                kernels::apply_2q(work, wires, qubits[0], qubits[1], k2);
                kernels::apply_2q(work, wires, qubits[0] + n_qubits_, qubits[1] + n_qubits_,
                                  gates::conj(k2));
            }
            for (std::size_t i = 0; i < acc.size(); ++i) {
                acc[i] += work[i];
            }
        }
        entries_ = std::move(acc);
        return *this;
    }

    [[nodiscard]] Complex trace() const noexcept {
        Complex acc{};
        for (Index i = 0; i < dim(); ++i) {
            acc += entries_[i * dim() + i];
        }
        return acc;
    }

    /// Largest |rho - rho^dagger| entry.
    [[nodiscard]] double hermiticity_error() const noexcept {
        double worst = 0.0;
        for (Index r = 0; r < dim(); ++r) {
            for (Index c = 0; c < dim(); ++c) {
                worst = std::max(worst, std::abs(entries_[r * dim() + c] -
                                                 std::conj(entries_[c * dim() + r])));
            }
        }
        return worst;
    }

    /// Z-basis measurement probabilities (the diagonal).
    [[nodiscard]] OutcomeDistribution diagonal() const {
        std::vector<double> probs(dim());
        for (Index i = 0; i < dim(); ++i) {
            probs[i] = std::max(0.0, entries_[i * dim() + i].real());
        }
        return OutcomeDistribution(n_qubits_, std::move(probs));
    }

  private:
    static std::size_t check_n(std::size_t n) {
        if (n == 0 || n > kMaxDensityQubits) {
            throw Error("density matrix qubit count must be in 1..6, got " + std::to_string(n));
        }
        return n;
    }

    std::size_t n_qubits_;
    std::vector<Complex> entries_;
};

[[nodiscard]] inline DensityMatrix density_from_state(const Statevector &psi) {
    return DensityMatrix::from_state(psi);
}

[[nodiscard]] inline DensityMatrix apply_channel(DensityMatrix rho, const NoiseChannel &channel,
                                                 std::span<const std::size_t> qubits) {
    rho.apply(channel, qubits);
    return rho;
}

/// Tr(rho P).
[[nodiscard]] inline double dm_pauli_expectation(const DensityMatrix &rho, const PauliString &p) {
    if (p.n_qubits() != rho.n_qubits()) {
        throw Error("Pauli string and density matrix disagree on qubit count");
    }
    // Tr(rho P) = sum_{r} (P rho)[r, r]; apply P on the row wires.
    std::vector<Complex> work(rho.entries().begin(), rho.entries().end());
    kernels::apply_pauli(work, 2 * rho.n_qubits(), p);
    Complex acc{};
    for (Index i = 0; i < rho.dim(); ++i) {
        acc += work[i * rho.dim() + i];
    }
    return acc.real();
}

} // namespace mermin
