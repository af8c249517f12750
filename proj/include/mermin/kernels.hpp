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
/// In-place amplitude kernels over a contiguous array of 2^N entries.
///
/// Every kernel pairs indices by stride instead of building a full operator:
/// for a gate on qubit q the partner of index i is i ^ (1 << (N-1-q)). The
/// same kernels drive the density matrix, which is treated as a 2N-qubit
/// vector (row qubits 0..N-1, column qubits N..2N-1).

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>

#include "mermin/bits.hpp"
#include "mermin/circuit.hpp"

namespace mermin {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix.
using Mat2 = std::array<Complex, 4>;
/// Row-major 4x4 matrix; local index is (bit of first qubit << 1) | bit of second.
using Mat4 = std::array<Complex, 16>;

namespace gates {

inline const Complex kI{0.0, 1.0};
inline const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

inline Mat2 matrix(GateKind kind) {
    const Complex one{1.0, 0.0};
    const Complex zero{0.0, 0.0};
    const Complex t_phase = std::polar(1.0, std::numbers::pi / 4.0);
    switch (kind) {
    case GateKind::H: return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    case GateKind::X: return {zero, one, one, zero};
    case GateKind::S: return {one, zero, zero, kI};
    case GateKind::SDG: return {one, zero, zero, -kI};
    case GateKind::T: return {one, zero, zero, t_phase};
    case GateKind::TDG: return {one, zero, zero, std::conj(t_phase)};
    case GateKind::CNOT: break;
    }
    throw Error("CNOT has no single-qubit matrix");
}

inline Mat2 conj(const Mat2 &m) {
    Mat2 out{};
    for (std::size_t i = 0; i < 4; ++i) {
        out[i] = std::conj(m[i]);
    }
    return out;
}

inline Mat4 conj(const Mat4 &m) {
    Mat4 out{};
    for (std::size_t i = 0; i < 16; ++i) {
        out[i] = std::conj(m[i]);
    }
    return out;
}

} // namespace gates

namespace kernels {

inline void apply_1q(std::span<Complex> amps, std::size_t n, std::size_t q, const Mat2 &m) {
    const Index stride = qubit_mask(q, n);
    const Index dim = dimension(n);
    for (Index base = 0; base < dim; base += 2 * stride) {
        for (Index i = base; i < base + stride; ++i) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i + stride];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

/// Diagonal gates only touch the |1> half.
inline void apply_phase(std::span<Complex> amps, std::size_t n, std::size_t q, Complex phase) {
    const Index stride = qubit_mask(q, n);
    const Index dim = dimension(n);
    for (Index base = 0; base < dim; base += 2 * stride) {
        for (Index i = base + stride; i < base + 2 * stride; ++i) {
            amps[i] *= phase;
        }
    }
}

inline void apply_cnot(std::span<Complex> amps, std::size_t n, std::size_t control,
                       std::size_t target) {
    const Index cmask = qubit_mask(control, n);
    const Index tmask = qubit_mask(target, n);
    const Index dim = dimension(n);
    for (Index i = 0; i < dim; ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

inline void apply_2q(std::span<Complex> amps, std::size_t n, std::size_t q0, std::size_t q1,
                     const Mat4 &m) {
    const Index m0 = qubit_mask(q0, n);
    const Index m1 = qubit_mask(q1, n);
    const Index dim = dimension(n);
    for (Index i = 0; i < dim; ++i) {
        if ((i & (m0 | m1)) != 0) {
            continue;
        }
        const std::array<Index, 4> idx{i, i | m1, i | m0, i | m0 | m1};
        std::array<Complex, 4> in{};
        for (std::size_t k = 0; k < 4; ++k) {
            in[k] = amps[idx[k]];
        }
        for (std::size_t r = 0; r < 4; ++r) {
            Complex acc{};
            for (std::size_t k = 0; k < 4; ++k) {
                acc += m[r * 4 + k] * in[k];
            }
            amps[idx[r]] = acc;
        }
    }
}

inline void apply_gate(std::span<Complex> amps, std::size_t n, const Gate &g) {
    switch (g.kind) {
    case GateKind::CNOT: apply_cnot(amps, n, g.control(), g.target()); return;
    case GateKind::S: apply_phase(amps, n, g.qubit(), gates::kI); return;
    case GateKind::SDG: apply_phase(amps, n, g.qubit(), -gates::kI); return;
    case GateKind::T:
        apply_phase(amps, n, g.qubit(), std::polar(1.0, std::numbers::pi / 4.0));
        return;
    case GateKind::TDG:
        apply_phase(amps, n, g.qubit(), std::polar(1.0, -std::numbers::pi / 4.0));
        return;
    default: apply_1q(amps, n, g.qubit(), gates::matrix(g.kind)); return;
    }
}

/// Same as apply_gate but with the complex-conjugated gate matrix; used for
/// the column half of a vectorised density matrix.
inline void apply_gate_conj(std::span<Complex> amps, std::size_t n, const Gate &g,
                            std::size_t offset) {
    Gate shifted = g;
    shifted.qubits[0] += offset;
    shifted.qubits[1] += offset;
    switch (g.kind) {
    case GateKind::S: apply_phase(amps, n, shifted.qubit(), -gates::kI); return;
    case GateKind::SDG: apply_phase(amps, n, shifted.qubit(), gates::kI); return;
    case GateKind::T:
        apply_phase(amps, n, shifted.qubit(), std::polar(1.0, -std::numbers::pi / 4.0));
        return;
    case GateKind::TDG:
        apply_phase(amps, n, shifted.qubit(), std::polar(1.0, std::numbers::pi / 4.0));
        return;
    default: apply_gate(amps, n, shifted); return; // H, X, CNOT are real
    }
}

} // namespace kernels

} // namespace mermin
