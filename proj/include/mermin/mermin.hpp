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
/// Mermin polynomials: term lists, the standard recursion, prime-count
/// symmetry classes, and the local-realism and quantum bounds.
///
/// A term is an integer coefficient times a product of one setting per
/// party. Its prime mask says which parties use the primed setting a'_i;
/// masks follow the bits.hpp ordering, so "001" (party 0 leftmost) means
/// a_1 a_2 a'_3.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mermin/bits.hpp"
#include "mermin/error.hpp"
#include "mermin/kernels.hpp"
#include "mermin/statevector.hpp"

namespace mermin {

struct MerminTerm {
    std::int64_t coefficient = 0;
    Index prime_mask = 0;

    friend bool operator==(const MerminTerm &, const MerminTerm &) = default;
};

class MerminPolynomial {
  public:
    /// Terms are stored sorted by mask. Duplicate masks and zero
    /// coefficients are rejected.
    MerminPolynomial(std::size_t n_parties, std::vector<MerminTerm> terms)
        : n_parties_(n_parties), terms_(std::move(terms)) {
        if (n_parties == 0 || n_parties > 20) {
            throw Error("Mermin polynomial needs 1..20 parties");
        }
        std::sort(terms_.begin(), terms_.end(),
                  [](const MerminTerm &a, const MerminTerm &b) { return a.prime_mask < b.prime_mask; });
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].coefficient == 0) {
                throw Error("Mermin term with zero coefficient");
            }
            if (terms_[i].prime_mask >= dimension(n_parties)) {
                throw Error("prime mask out of range");
            }
            if (i > 0 && terms_[i].prime_mask == terms_[i - 1].prime_mask) {
                throw Error("duplicate prime mask " + to_bitstring(terms_[i].prime_mask, n_parties));
            }
        }
    }

    /// Builds from (coefficient, mask-string) pairs, e.g. {+1, "001"}.
    [[nodiscard]] static MerminPolynomial
    from_strings(std::size_t n, const std::vector<std::pair<int, std::string_view>> &terms) {
        std::vector<MerminTerm> out;
        for (const auto &[c, bits] : terms) {
            if (bits.size() != n) {
                throw Error("mask string length must equal the party count");
            }
            out.push_back({c, from_bitstring(bits)});
        }
        return MerminPolynomial(n, std::move(out));
    }

    [[nodiscard]] std::size_t n_parties() const noexcept { return n_parties_; }
    [[nodiscard]] const std::vector<MerminTerm> &terms() const noexcept { return terms_; }

    [[nodiscard]] MerminPolynomial negated() const {
        auto t = terms_;
        for (auto &term : t) {
            term.coefficient = -term.coefficient;
        }
        return MerminPolynomial(n_parties_, std::move(t));
    }

    friend bool operator==(const MerminPolynomial &, const MerminPolynomial &) = default;

  private:
    std::size_t n_parties_;
    std::vector<MerminTerm> terms_;
};

inline void to_json(nlohmann::json &j, const MerminPolynomial &p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &t : p.terms()) {
        terms.push_back({t.coefficient, t.prime_mask});
    }
    j = nlohmann::json{{"n", p.n_parties()}, {"terms", std::move(terms)}};
}

[[nodiscard]] inline MerminPolynomial polynomial_from_json(const nlohmann::json &j) {
    std::vector<MerminTerm> terms;
    for (const auto &t : j.at("terms")) {
        terms.push_back({t.at(0).get<std::int64_t>(), t.at(1).get<Index>()});
    }
    return MerminPolynomial(j.at("n").get<std::size_t>(), std::move(terms));
}

/// The polynomials tested on hardware for 3, 4 and 5 parties, term by term.
[[nodiscard]] inline MerminPolynomial canonical_polynomial(std::size_t n) {
    switch (n) {
    case 3:
        return MerminPolynomial::from_strings(3, {{+1, "001"}, {+1, "010"}, {+1, "100"}, {-1, "111"}});
    case 4:
        return MerminPolynomial::from_strings(
            4, {{-1, "0000"},
                {+1, "0001"}, {+1, "0010"}, {+1, "0100"}, {+1, "1000"},
                {+1, "0011"}, {+1, "0101"}, {+1, "0110"}, {+1, "1001"}, {+1, "1010"}, {+1, "1100"},
                {-1, "0111"}, {-1, "1011"}, {-1, "1101"}, {-1, "1110"},
                {-1, "1111"}});
    case 5:
        return MerminPolynomial::from_strings(
            5, {{-1, "00000"},
                {+1, "00011"}, {+1, "00101"}, {+1, "01001"}, {+1, "10001"}, {+1, "00110"},
                {+1, "01010"}, {+1, "10010"}, {+1, "01100"}, {+1, "10100"}, {+1, "11000"},
                {-1, "01111"}, {-1, "10111"}, {-1, "11011"}, {-1, "11101"}, {-1, "11110"}});
    default: break;
    }
    throw Error("canonical Mermin polynomial is defined for n = 3, 4, 5 only");
}

/// Standard Mermin recursion, M_1 = a_1 and
///   M_n = M_{n-1} (a_n + a'_n) / 2 + M'_{n-1} (a_n - a'_n) / 2,
/// where M' swaps primed and unprimed settings. The halves are dropped while
/// iterating and the result is divided by the gcd of its coefficients.
[[nodiscard]] inline MerminPolynomial recursive_polynomial(std::size_t n) {
    if (n < 2 || n > 20) {
        throw Error("recursive Mermin polynomial needs 2..20 parties");
    }
    std::map<Index, std::int64_t> current{{0, 1}}; // a_1
    for (std::size_t k = 2; k <= n; ++k) {
        const Index all = dimension(k - 1) - 1;
        std::map<Index, std::int64_t> next;
        for (const auto &[mask, c] : current) {
            const Index swapped = mask ^ all;
            next[mask << 1U] += c;                 // M a_k
            next[(mask << 1U) | 1U] += c;          // M a'_k
            next[swapped << 1U] += c;              // M' a_k
            next[(swapped << 1U) | 1U] -= c;       // -M' a'_k
        }
        std::erase_if(next, [](const auto &kv) { return kv.second == 0; });
        current = std::move(next);
    }
    std::int64_t g = 0;
    for (const auto &[mask, c] : current) {
        g = std::gcd(g, c);
    }
    std::vector<MerminTerm> terms;
    for (const auto &[mask, c] : current) {
        terms.push_back({c / g, mask});
    }
    return MerminPolynomial(n, std::move(terms));
}

/// Value of the polynomial for deterministic outcomes. Bit (n-1-i) of
/// `unprimed_neg` / `primed_neg` set means a_i / a'_i = -1.
[[nodiscard]] inline std::int64_t evaluate_deterministic(const MerminPolynomial &p,
                                                         Index unprimed_neg, Index primed_neg) {
    std::int64_t total = 0;
    for (const auto &t : p.terms()) {
        const Index negatives = (unprimed_neg & ~t.prime_mask) | (primed_neg & t.prime_mask);
        total += (std::popcount(negatives) % 2 == 0) ? t.coefficient : -t.coefficient;
    }
    return total;
}

inline constexpr std::size_t kMaxExhaustiveParties = 8;

/// Local-realism bound: the maximum over all 4^n deterministic assignments
/// of a_i, a'_i in {-1, +1}. Exact integer arithmetic.
[[nodiscard]] inline std::int64_t lr_bound_exact(const MerminPolynomial &p) {
    const std::size_t n = p.n_parties();
    if (n > kMaxExhaustiveParties) {
        throw Error("exhaustive local-realism bound is limited to 8 parties");
    }
    const Index dim = dimension(n);
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (Index a = 0; a < dim; ++a) {
        for (Index b = 0; b < dim; ++b) {
            best = std::max(best, evaluate_deterministic(p, a, b));
        }
    }
    return best;
}

[[nodiscard]] inline double lr_bound(const MerminPolynomial &p) {
    return static_cast<double>(lr_bound_exact(p));
}

/// Observables substituted for a_i (unprimed) and a'_i (primed).
struct PartySettings {
    Pauli unprimed = Pauli::X;
    Pauli primed = Pauli::Y;
};

[[nodiscard]] inline std::vector<PartySettings> default_settings(std::size_t n) {
    return std::vector<PartySettings>(n);
}

/// Pauli string measured for one term.
[[nodiscard]] inline PauliString term_observable(Index prime_mask, std::size_t n,
                                                 const std::vector<PartySettings> &settings) {
    if (settings.size() != n) {
        throw Error("need one settings pair per party");
    }
    std::vector<Pauli> ops(n);
    for (std::size_t i = 0; i < n; ++i) {
        ops[i] = bit_of(prime_mask, i, n) ? settings[i].primed : settings[i].unprimed;
    }
    return PauliString(std::move(ops));
}

inline constexpr std::size_t kMaxOperatorParties = 6;

/// out = M v, with M = sum_terms c * P(term). Matrix-free.
inline void apply_mermin_operator(const MerminPolynomial &p,
                                  const std::vector<PartySettings> &settings,
                                  std::span<const Complex> v, std::span<Complex> out) {
    const std::size_t n = p.n_parties();
    std::fill(out.begin(), out.end(), Complex{});
    std::vector<Complex> work(v.size());
    for (const auto &t : p.terms()) {
        std::copy(v.begin(), v.end(), work.begin());
        kernels::apply_pauli(work, n, term_observable(t.prime_mask, n, settings));
        const double c = static_cast<double>(t.coefficient);
        for (std::size_t i = 0; i < work.size(); ++i) {
            out[i] += c * work[i];
        }
    }
}

/// Dense 2^n x 2^n Mermin operator, row-major.
[[nodiscard]] inline std::vector<Complex>
mermin_operator(const MerminPolynomial &p, const std::vector<PartySettings> &settings) {
    const std::size_t n = p.n_parties();
    if (n > kMaxOperatorParties) {
        throw Error("dense Mermin operator is limited to 6 parties");
    }
    const Index dim = dimension(n);
    std::vector<Complex> m(dim * dim);
    std::vector<Complex> e(dim);
    std::vector<Complex> col(dim);
    for (Index j = 0; j < dim; ++j) {
        std::fill(e.begin(), e.end(), Complex{});
        e[j] = 1.0;
        apply_mermin_operator(p, settings, e, col);
        for (Index r = 0; r < dim; ++r) {
            m[r * dim + j] = col[r];
        }
    }
    return m;
}

/// <psi| M |psi>.
[[nodiscard]] inline double mermin_expectation(const MerminPolynomial &p, const Statevector &psi,
                                               const std::vector<PartySettings> &settings) {
    if (psi.n_qubits() != p.n_parties()) {
        throw Error("state and polynomial disagree on party count");
    }
    std::vector<Complex> out(psi.amplitudes().size());
    apply_mermin_operator(p, settings, psi.amplitudes(), out);
    Complex acc{};
    for (std::size_t i = 0; i < out.size(); ++i) {
        acc += std::conj(psi[i]) * out[i];
    }
    return acc.real();
}

/// Quantum bound: the largest eigenvalue magnitude of the Hermitian Mermin
/// operator, by power iteration on M^2 (so a +/- lambda pair does not stall
/// convergence). Stops when successive estimates of lambda^2 agree to
/// `tol` relative.
[[nodiscard]] inline double qm_bound(const MerminPolynomial &p,
                                     const std::vector<PartySettings> &settings,
                                     double tol = 1e-10, std::size_t max_iterations = 200000) {
    const std::size_t n = p.n_parties();
    if (n > kMaxOperatorParties) {
        throw Error("quantum bound is limited to 6 parties");
    }
    const Index dim = dimension(n);
    std::vector<Complex> v(dim);
    std::mt19937_64 rng(0x5eed5eedULL);
    auto draw = [&rng] { return static_cast<double>(rng() >> 11U) * 0x1.0p-53 - 0.5; };
    for (auto &x : v) {
        const double re = draw();
        x = Complex{re, draw()};
    }
    auto normalise = [](std::vector<Complex> &x) {
        double s = 0.0;
        for (const auto &e : x) {
            s += std::norm(e);
        }
        s = std::sqrt(s);
        if (s == 0.0) {
            return 0.0;
        }
        for (auto &e : x) {
            e /= s;
        }
        return s;
    };
    normalise(v);
    std::vector<Complex> mv(dim);
    std::vector<Complex> mmv(dim);
    double previous = -1.0;
    for (std::size_t it = 0; it < max_iterations; ++it) {
        apply_mermin_operator(p, settings, v, mv);
        apply_mermin_operator(p, settings, mv, mmv);
        double rayleigh = 0.0; // <v|M^2|v> = |Mv|^2
        for (const auto &e : mv) {
            rayleigh += std::norm(e);
        }
        if (rayleigh == 0.0) {
            return 0.0;
        }
        if (previous >= 0.0 && std::abs(rayleigh - previous) <= tol * rayleigh) {
            return std::sqrt(rayleigh);
        }
        previous = rayleigh;
        v = mmv;
        normalise(v);
    }
    throw Error("power iteration did not converge");
}

[[nodiscard]] inline double qm_bound(const MerminPolynomial &p) {
    return qm_bound(p, default_settings(p.n_parties()));
}

struct SymmetryClass {
    std::size_t prime_count = 0;
    /// Sum of the coefficients of every term in the class.
    std::int64_t signed_weight = 0;
    /// Smallest mask in the class (lexicographically smallest string).
    Index representative_mask = 0;
    std::size_t term_count = 0;

    friend bool operator==(const SymmetryClass &, const SymmetryClass &) = default;
};

/// Groups terms by number of primes. Requires one coefficient per class.
[[nodiscard]] inline std::vector<SymmetryClass> symmetry_classes(const MerminPolynomial &p) {
    std::map<std::size_t, std::vector<MerminTerm>> groups;
    for (const auto &t : p.terms()) {
        groups[static_cast<std::size_t>(std::popcount(t.prime_mask))].push_back(t);
    }
    std::vector<SymmetryClass> out;
    for (const auto &[k, terms] : groups) {
        const std::int64_t c = terms.front().coefficient;
        for (const auto &t : terms) {
            if (t.coefficient != c) {
                throw Error("terms with " + std::to_string(k) +
                            " primes have different coefficients; polynomial is not exchange symmetric");
            }
        }
        out.push_back({k, c * static_cast<std::int64_t>(terms.size()), terms.front().prime_mask,
                       terms.size()});
    }
    return out;
}

[[nodiscard]] inline std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

/// Operator rebuilt from classes alone: each class spreads its weight evenly
/// over all C(n, k) masks with k primes. Equals mermin_operator when every
/// class is complete.
[[nodiscard]] inline std::vector<Complex>
class_operator(const std::vector<SymmetryClass> &classes, std::size_t n,
               const std::vector<PartySettings> &settings) {
    if (n > kMaxOperatorParties) {
        throw Error("dense Mermin operator is limited to 6 parties");
    }
    const Index dim = dimension(n);
    std::vector<Complex> m(dim * dim);
    std::vector<Complex> e(dim);
    for (const auto &cls : classes) {
        const double w = static_cast<double>(cls.signed_weight) /
                         static_cast<double>(binomial(n, cls.prime_count));
        for (Index mask = 0; mask < dim; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != cls.prime_count) {
                continue;
            }
            const auto obs = term_observable(mask, n, settings);
            for (Index j = 0; j < dim; ++j) {
                std::fill(e.begin(), e.end(), Complex{});
                e[j] = 1.0;
                kernels::apply_pauli(e, n, obs);
                for (Index r = 0; r < dim; ++r) {
                    m[r * dim + j] += w * e[r];
                }
            }
        }
    }
    return m;
}

/// GHZ relative phase (in units of pi/4) that maximises <M> with X/Y settings.
struct PhaseChoice {
    int quarter_turns = 0;
    double value = 0.0;
};

[[nodiscard]] inline Statevector ghz_state(std::size_t n, int quarter_turns) {
    std::vector<Complex> amps(dimension(n));
    amps.front() = 1.0 / std::numbers::sqrt2;
    amps.back() = std::polar(1.0 / std::numbers::sqrt2, quarter_turns * std::numbers::pi / 4.0);
    return Statevector(n, std::move(amps));
}

/// Scans the eight phases k*pi/4 through the dense operator and returns the
/// first one attaining the maximum.
[[nodiscard]] inline PhaseChoice maximizing_phase(const MerminPolynomial &p) {
    PhaseChoice best{0, -std::numeric_limits<double>::infinity()};
    const auto settings = default_settings(p.n_parties());
    for (int k = 0; k < 8; ++k) {
        const double v = mermin_expectation(p, ghz_state(p.n_parties(), k), settings);
        if (v > best.value + 1e-9) {
            best = {k, v};
        }
    }
    return best;
}

/// Preparation phases quoted alongside the hardware runs, in units of pi/4:
/// i for n = 3, e^{i pi/4}|0000> + |1111> (relative phase -pi/4) for n = 4,
/// and no phase for n = 5.
[[nodiscard]] inline int hardware_phase(std::size_t n) {
    switch (n) {
    case 3: return 2;
    case 4: return 7;
    case 5: return 0;
    default: break;
    }
    throw Error("hardware preparation phase is known for n = 3, 4, 5 only");
}

} // namespace mermin

// MerminPolynomial has no default constructor, so j.get<MerminPolynomial>()
// goes through this specialization.
template <>
struct nlohmann::adl_serializer<mermin::MerminPolynomial> {
    static mermin::MerminPolynomial from_json(const json &j) { return mermin::polynomial_from_json(j); }
    static void to_json(json &j, const mermin::MerminPolynomial &p) { mermin::to_json(j, p); }
};
