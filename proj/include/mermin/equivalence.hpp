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
/// Circuit equivalence checks used to verify compiler passes.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "mermin/circuit.hpp"
#include "mermin/error.hpp"
#include "mermin/statevector.hpp"

namespace mermin {

inline constexpr std::size_t kMaxUnitaryQubits = 6;

/// Full unitary of the gate list, column-major: column j is U|j>.
[[nodiscard]] inline std::vector<Complex> circuit_unitary(const Circuit &c) {
    if (c.n_qubits() > kMaxUnitaryQubits) {
        throw Error("unitary construction is limited to 6 qubits");
    }
    const Index dim = dimension(c.n_qubits());
    std::vector<Complex> u;
    u.reserve(dim * dim);
    for (Index j = 0; j < dim; ++j) {
        auto col = Statevector::basis_state(c.n_qubits(), j).apply(c);
        u.insert(u.end(), col.amplitudes().begin(), col.amplitudes().end());
    }
    return u;
}

/// |Tr(U_a^dagger U_b)| / 2^n, which is 1 iff the unitaries agree up to a
/// global phase.
[[nodiscard]] inline double unitary_overlap(const Circuit &a, const Circuit &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw Error("circuits act on different qubit counts");
    }
    const auto ua = circuit_unitary(a);
    const auto ub = circuit_unitary(b);
    Complex tr{};
    for (std::size_t i = 0; i < ua.size(); ++i) {
        tr += std::conj(ua[i]) * ub[i];
    }
    return std::abs(tr) / static_cast<double>(dimension(a.n_qubits()));
}

[[nodiscard]] inline bool unitary_equivalent(const Circuit &a, const Circuit &b, double tol) {
    return unitary_overlap(a, b) >= 1.0 - tol;
}

/// Fidelity of the states both circuits prepare from |0...0>.
[[nodiscard]] inline double state_overlap(const Circuit &a, const Circuit &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw Error("circuits act on different qubit counts");
    }
    return fidelity(simulate(a), simulate(b));
}

[[nodiscard]] inline bool state_equivalent(const Circuit &a, const Circuit &b, double tol) {
    return state_overlap(a, b) >= 1.0 - tol;
}

} // namespace mermin
