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
/// Gate-level noise: depolarizing after every gate on the qubits it touches,
/// plus a symmetric readout flip per qubit. Propagation is exact (density
/// matrix), not sampled.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mermin/circuit.hpp"
#include "mermin/density_matrix.hpp"
#include "mermin/error.hpp"
#include "mermin/statevector.hpp"

namespace mermin {

struct NoiseModel {
    double depol_1q = 0.0;
    double depol_2q = 0.0;
    double readout_flip = 0.0;

    void validate() const {
        for (double p : {depol_1q, depol_2q, readout_flip}) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw Error("noise probabilities must lie in [0, 1]");
            }
        }
    }

    [[nodiscard]] bool is_zero() const noexcept {
        return depol_1q == 0.0 && depol_2q == 0.0 && readout_flip == 0.0;
    }

    friend bool operator==(const NoiseModel &, const NoiseModel &) = default;
};

inline void to_json(nlohmann::json &j, const NoiseModel &m) {
    j = nlohmann::json{
        {"depol_1q", m.depol_1q}, {"depol_2q", m.depol_2q}, {"readout_flip", m.readout_flip}};
}

/// Each qubit's reported bit is flipped independently with probability `p`.
[[nodiscard]] inline OutcomeDistribution apply_readout_flip(const OutcomeDistribution &dist,
                                                            double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error("readout flip probability must lie in [0, 1]");
    }
    const std::size_t n = dist.n_qubits();
    std::vector<double> probs(dist.probabilities().begin(), dist.probabilities().end());
    if (p == 0.0) {
        return dist;
    }
    std::vector<double> next(probs.size());
    for (std::size_t q = 0; q < n; ++q) {
        const Index m = qubit_mask(q, n);
        for (Index i = 0; i < probs.size(); ++i) {
            next[i] = (1.0 - p) * probs[i] + p * probs[i ^ m];
        }
        probs.swap(next);
    }
    return OutcomeDistribution(n, std::move(probs));
}

/// Final density matrix of the noisy circuit (measurement tags not applied).
[[nodiscard]] inline DensityMatrix noisy_density(const Circuit &c, const NoiseModel &m) {
    m.validate();
    if (c.n_qubits() > kMaxDensityQubits) {
        throw Error("noisy simulation is limited to 6 qubits");
    }
    DensityMatrix rho(c.n_qubits());
    const auto one = NoiseChannel::depolarizing(m.depol_1q, 1);
    const auto two = NoiseChannel::depolarizing(m.depol_2q, 2);
    for (const Gate &g : c.gates()) {
        rho.apply(g);
        if (g.kind == GateKind::CNOT) {
            if (m.depol_2q > 0.0) {
                const std::array<std::size_t, 2> qs{g.control(), g.target()};
                rho.apply(two, qs);
            }
        } else if (m.depol_1q > 0.0) {
            const std::array<std::size_t, 1> qs{g.qubit()};
            rho.apply(one, qs);
        }
    }
    return rho;
}

/// Outcome probabilities of the circuit under `m`, measurement tags lowered
/// to gates (which are noisy like any other gate).
[[nodiscard]] inline OutcomeDistribution noisy_distribution(const Circuit &c, const NoiseModel &m) {
    const auto rho = noisy_density(lower_measurement(c), m);
    return apply_readout_flip(rho.diagonal(), m.readout_flip);
}

} // namespace mermin
