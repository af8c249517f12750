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
/// Seeded multinomial shot sampling and the counts table it produces.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mermin/bits.hpp"
#include "mermin/error.hpp"
#include "mermin/statevector.hpp"

namespace mermin {

/// Identifier recorded in every CountsTable. std::mt19937_64's output
/// sequence is fixed by the standard; the uniform draw and the inverse-CDF
/// walk are implemented here, so results do not depend on the standard
/// library's distribution classes.
inline constexpr const char *kRngId = "mt19937_64+u53-inverse-cdf";

/// Outcome string -> count, plus the metadata needed to reproduce it.
struct CountsTable {
    std::size_t n_qubits = 0;
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::string rng_id = kRngId;

    [[nodiscard]] std::uint64_t count(const std::string &bits) const {
        const auto it = counts.find(bits);
        return it == counts.end() ? 0 : it->second;
    }

    /// Throws unless every key is an n-bit string and counts sum to shots.
    void validate() const {
        std::uint64_t total = 0;
        for (const auto &[bits, c] : counts) {
            if (bits.size() != n_qubits || bits.find_first_not_of("01") != std::string::npos) {
                throw Error("counts key '" + bits + "' is not a " + std::to_string(n_qubits) +
                            "-bit string");
            }
            total += c;
        }
        if (total != shots) {
            throw Error("counts sum to " + std::to_string(total) + " but shots = " +
                        std::to_string(shots));
        }
    }

    /// Builds a table from probabilities scaled to `shots` (rounded to the
    /// nearest count), e.g. to replay measured frequencies.
    [[nodiscard]] static CountsTable from_probabilities(const std::vector<std::string> &outcomes,
                                                        const std::vector<double> &probabilities,
                                                        std::uint64_t shots) {
        if (outcomes.size() != probabilities.size() || outcomes.empty()) {
            throw Error("outcome and probability lists must have equal nonzero length");
        }
        CountsTable t;
        t.n_qubits = outcomes.front().size();
        t.rng_id = "none";
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const auto c = static_cast<std::uint64_t>(std::llround(probabilities[i] * static_cast<double>(shots)));
            t.counts[outcomes[i]] += c;
            t.shots += c;
        }
        t.validate();
        return t;
    }

    /// CSV with header "outcome,count", rows in bitstring order.
    [[nodiscard]] std::string to_csv() const {
        std::ostringstream out;
        out << "outcome,count\n";
        for (const auto &[bits, c] : counts) {
            out << bits << ',' << c << '\n';
        }
        return out.str();
    }
};

/// Uniform double in [0, 1) from the top 53 bits of one generator output.
[[nodiscard]] inline double uniform_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

[[nodiscard]] inline CountsTable sample_counts(const OutcomeDistribution &dist,
                                               std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw Error("shots must be at least 1");
    }
    const auto probs = dist.probabilities();
    std::vector<double> cdf(probs.size());
    double running = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        running += probs[i];
        cdf[i] = running;
    }
    // Last nonzero bin absorbs rounding so every draw lands somewhere valid.
    std::size_t last = probs.size() - 1;
    while (last > 0 && probs[last] == 0.0) {
        --last;
    }
    for (std::size_t i = last; i < cdf.size(); ++i) {
        cdf[i] = 2.0;
    }

    std::vector<std::uint64_t> bins(probs.size(), 0);
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform_unit(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        ++bins[static_cast<std::size_t>(it - cdf.begin())];
    }

    CountsTable t;
    t.n_qubits = dist.n_qubits();
    t.shots = shots;
    t.seed = seed;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (bins[i] > 0) {
            t.counts[to_bitstring(i, dist.n_qubits())] = bins[i];
        }
    }
    return t;
}

} // namespace mermin
