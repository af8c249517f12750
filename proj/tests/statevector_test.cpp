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


#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "test_support.hpp"

namespace mermin {
namespace {

using testing::CMat;
using testing::CVec;

const double kR = 1.0 / std::numbers::sqrt2;

TEST(Statevector, HadamardOnZero) {
    const auto s = apply_gate(Statevector(1), h(0));
    EXPECT_NEAR(std::abs(s[0] - Complex(kR)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - Complex(kR)), 0.0, 1e-15);
}

TEST(Statevector, SPhaseOnPlus) {
    const auto s = apply_gate(apply_gate(Statevector(1), h(0)), mermin::s(0));
    EXPECT_NEAR(std::abs(s[0] - Complex(kR)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - Complex(0.0, kR)), 0.0, 1e-15);
}

TEST(Statevector, CnotOnSuperposedControl) {
    // (|00> + |10>)/sqrt2 -> (|00> + |11>)/sqrt2
    Statevector in(2, {kR, 0.0, kR, 0.0});
    const auto s = apply_gate(in, cnot(0, 1));
    EXPECT_NEAR(std::abs(s[0b00] - Complex(kR)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[0b11] - Complex(kR)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[0b10]), 0.0, 1e-15);
}

TEST(Statevector, BitOrderQubitZeroIsLeftmost) {
    Circuit c(3);
    c.append(x(0));
    const auto d = outcome_distribution(c);
    EXPECT_DOUBLE_EQ(d.at("100"), 1.0);
    EXPECT_DOUBLE_EQ(d[0b100], 1.0);
}

TEST(Statevector, ConstructionErrors) {
    EXPECT_THROW(Statevector(0), Error);
    EXPECT_THROW(Statevector(11), Error);
    EXPECT_THROW(Statevector(1, {1.0, 1.0}), Error);
    EXPECT_THROW(Statevector(2, {1.0, 0.0}), Error);
    EXPECT_THROW(Statevector::basis_state(2, 4), Error);
    Statevector s(2);
    EXPECT_THROW(s.apply(h(2)), Error);
    EXPECT_THROW(s.apply(Circuit(3)), Error);
}

TEST(Statevector, NormPreservedAfterEveryGate) {
    for (std::size_t n = 1; n <= 8; ++n) {
        const Circuit c = testing::random_circuit(n, 60, 100 + n);
        Statevector s(n);
        for (const Gate &g : c.gates()) {
            s.apply(g);
            ASSERT_NEAR(s.norm_squared(), 1.0, 1e-12) << "n=" << n;
            ASSERT_EQ(s.amplitudes().size(), dimension(n));
        }
    }
}

TEST(Statevector, GateInvolutionsOnRandomStates) {
    const std::vector<std::pair<Gate, Gate>> pairs{
        {h(1), h(1)}, {x(2), x(2)}, {s(0), sdg(0)}, {t(3), tdg(3)}, {cnot(0, 3), cnot(0, 3)}};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Statevector psi = simulate(testing::random_circuit(4, 40, seed));
        for (const auto &[a, b] : pairs) {
            const auto out = apply_gate(apply_gate(psi, a), b);
            for (Index i = 0; i < dimension(4); ++i) {
                ASSERT_NEAR(std::abs(out[i] - psi[i]), 0.0, 1e-12);
            }
        }
    }
}

TEST(Statevector, MatchesDenseOracleOnRandomCircuits) {
    for (std::size_t n = 1; n <= 5; ++n) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Circuit c = testing::random_circuit(n, 30, 7 * seed + n);
            const CVec want = testing::oracle_unitary(c).col(0);
            const CVec got = testing::to_eigen(simulate(c));
            ASSERT_LT((want - got).norm(), 1e-12) << "n=" << n << " seed=" << seed;
        }
    }
}

Statevector ghz_i() { return Statevector(3, {kR, 0, 0, 0, 0, 0, 0, Complex(0, kR)}); }

TEST(PauliExpectation, Examples) {
    EXPECT_NEAR(pauli_expectation(ghz_i(), PauliString::parse("XXY")), 1.0, 1e-12);
    EXPECT_NEAR(pauli_expectation(ghz_i(), PauliString::parse("YYY")), -1.0, 1e-12);
    EXPECT_NEAR(pauli_expectation(Statevector(1), PauliString::parse("Z")), 1.0, 1e-15);
    EXPECT_THROW((void)pauli_expectation(Statevector(2), PauliString::parse("Z")), Error);
    EXPECT_THROW((void)PauliString::parse("XQ"), Error);
}

TEST(PauliExpectation, MatchesDenseOracleAndIsBounded) {
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    std::mt19937_64 rng(5);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Statevector psi = simulate(testing::random_circuit(n, 25, seed * 31 + n));
            std::string text;
            for (std::size_t q = 0; q < n; ++q) {
                text.push_back(letters[rng() % 4]);
            }
            const auto p = PauliString::parse(text);
            const CVec v = testing::to_eigen(psi);
            const double want = (v.adjoint() * testing::oracle_pauli_string(p) * v)(0, 0).real();
            const double got = pauli_expectation(psi, p);
            ASSERT_NEAR(got, want, 1e-12) << text;
            ASSERT_LE(std::abs(got), 1.0 + 1e-12);
        }
    }
}

TEST(OutcomeDistribution, Examples) {
    const auto bell = outcome_distribution(simulate(Circuit(2).append(h(0)).append(cnot(0, 1))));
    EXPECT_NEAR(bell.at("00"), 0.5, 1e-15);
    EXPECT_NEAR(bell.at("11"), 0.5, 1e-15);
    EXPECT_NEAR(bell.at("01") + bell.at("10"), 0.0, 1e-15);
    const auto one = outcome_distribution(Statevector::basis_state(1, 1));
    EXPECT_DOUBLE_EQ(one.at("1"), 1.0);
    EXPECT_THROW(OutcomeDistribution(1, {0.5, 0.6}), Error);
    EXPECT_THROW(OutcomeDistribution(2, {0.5, 0.5}), Error);
}

TEST(OutcomeDistribution, IdealTranspiledXxyHasOnlyEvenParity) {
    const auto f = testing::load_fixtures();
    const auto it = std::find_if(f.begin(), f.end(),
                                 [](const auto &x) { return x.name == "ghz3_xxy_lowered.circ"; });
    ASSERT_NE(it, f.end());
    EXPECT_NEAR(outcome_distribution(it->circuit).parity_expectation(), 1.0, 1e-12);
}

TEST(OutcomeDistribution, YLoweringMapsPlusOneEigenstateToZero) {
    Circuit c(1);
    c.append(h(0)).append(s(0));  // (|0> + i|1>)/sqrt2
    c.set_measure_basis({Basis::Y});
    EXPECT_NEAR(outcome_distribution(c).at("0"), 1.0, 1e-12);
}

TEST(Sampling, DegenerateDistribution) {
    const auto t = sample_counts(outcome_distribution(Statevector(1)), 100, 99);
    EXPECT_EQ(t.count("0"), 100U);
    EXPECT_EQ(t.counts.size(), 1U);
    EXPECT_EQ(t.rng_id, kRngId);
}

TEST(Sampling, BellCountsWithinFourSigma) {
    const OutcomeDistribution bell(2, {0.5, 0.0, 0.0, 0.5});
    const double sigma = std::sqrt(8192 * 0.25);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto t = sample_counts(bell, 8192, seed);
        t.validate();
        EXPECT_NEAR(static_cast<double>(t.count("00")), 4096.0, 4 * sigma);
        EXPECT_EQ(t.count("00") + t.count("11"), 8192U);
    }
}

TEST(Sampling, Deterministic) {
    const auto d = outcome_distribution(simulate(testing::random_circuit(3, 20, 4)));
    const auto a = sample_counts(d, 1000, 42);
    const auto b = sample_counts(d, 1000, 42);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_NE(a.counts, sample_counts(d, 1000, 43).counts);
    EXPECT_EQ(a.seed, 42U);
    EXPECT_THROW((void)sample_counts(d, 0, 1), Error);
}

TEST(Sampling, ChiSquareOverHundredSeeds) {
    const auto d = outcome_distribution(simulate(testing::random_circuit(3, 25, 11)));
    std::size_t bins = 0;
    for (double p : d.probabilities()) {
        bins += p > 0.0 ? 1 : 0;
    }
    ASSERT_GE(bins, 2U);
    const boost::math::chi_squared_distribution<double> dist(static_cast<double>(bins - 1));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto t = sample_counts(d, 8192, seed);
        double stat = 0.0;
        for (Index i = 0; i < dimension(3); ++i) {
            const double expected = 8192.0 * d[i];
            if (expected == 0.0) {
                ASSERT_EQ(t.count(to_bitstring(i, 3)), 0U);
                continue;
            }
            const double diff = static_cast<double>(t.count(to_bitstring(i, 3))) - expected;
            stat += diff * diff / expected;
        }
        const double p_value = boost::math::cdf(boost::math::complement(dist, stat));
        ASSERT_GT(p_value, 1e-6) << "seed " << seed;
    }
}

TEST(CountsTable, ValidationAndCsv) {
    CountsTable t;
    t.n_qubits = 2;
    t.shots = 3;
    t.counts = {{"00", 1}, {"11", 2}};
    EXPECT_NO_THROW(t.validate());
    EXPECT_EQ(t.to_csv(), "outcome,count\n00,1\n11,2\n");
    t.counts["1"] = 0;
    EXPECT_THROW(t.validate(), Error);
    t.counts.erase("1");
    t.shots = 4;
    EXPECT_THROW(t.validate(), Error);
}

TEST(DensityMatrix, Examples) {
    const auto rho = density_from_state(Statevector(1));
    EXPECT_NEAR(std::abs(rho(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(rho(1, 1)), 0.0, 1e-15);

    const auto mixed = apply_channel(density_from_state(simulate(Circuit(1).append(h(0)).append(t(0)))),
                                     NoiseChannel::depolarizing(1.0, 1), std::array<std::size_t, 1>{0});
    EXPECT_NEAR(std::abs(mixed(0, 0) - 0.5), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(mixed(1, 1) - 0.5), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(mixed(0, 1)), 0.0, 1e-12);

    const auto phi = ghz_i();
    for (const char *p : {"XXY", "YYY", "XYZ", "IZZ"}) {
        const auto ps = PauliString::parse(p);
        EXPECT_NEAR(dm_pauli_expectation(density_from_state(phi), ps), pauli_expectation(phi, ps), 1e-12);
    }
}

TEST(DensityMatrix, GateEvolutionMatchesOuterProduct) {
    const Circuit c = testing::random_circuit(3, 30, 77);
    DensityMatrix rho(3);
    for (const Gate &g : c.gates()) {
        rho.apply(g);
    }
    const CVec v = testing::to_eigen(simulate(c));
    const CMat want = v * v.adjoint();
    for (Index i = 0; i < 8; ++i) {
        for (Index j = 0; j < 8; ++j) {
            ASSERT_NEAR(std::abs(rho(i, j) - want(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))),
                        0.0, 1e-12);
        }
    }
}

TEST(Equivalence, Examples) {
    const Circuit direct = Circuit(3).append(cnot(1, 2));
    Circuit reversed(3);
    reversed.append(h(1)).append(h(2)).append(cnot(2, 1)).append(h(1)).append(h(2));
    EXPECT_TRUE(unitary_equivalent(direct, direct, 1e-12));
    EXPECT_TRUE(unitary_equivalent(direct, reversed, 1e-12));
    EXPECT_FALSE(unitary_equivalent(direct, Circuit(3).append(cnot(2, 1)), 1e-6));
    // A global phase is invisible to the overlap.
    Circuit zz(1);
    zz.append(s(0)).append(x(0)).append(s(0)).append(x(0));
    EXPECT_TRUE(unitary_equivalent(zz, Circuit(1), 1e-12));
    EXPECT_THROW((void)unitary_overlap(Circuit(2), Circuit(3)), Error);
}

TEST(Equivalence, ReversalIdentityAsDenseMatrices) {
    CMat hh = testing::kron(testing::oracle_single(GateKind::H), testing::oracle_single(GateKind::H));
    CMat c12(4, 4);
    CMat c21(4, 4);
    c12 << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
    c21 << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0;
    EXPECT_LT((c12 - hh * c21 * hh).cwiseAbs().maxCoeff(), 1e-12);
    // And the library's unitary agrees entrywise with the oracle.
    const auto u = circuit_unitary(Circuit(2).append(cnot(0, 1)));
    for (Index r = 0; r < 4; ++r) {
        for (Index c = 0; c < 4; ++c) {
            EXPECT_NEAR(std::abs(u[c * 4 + r] - c12(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))),
                        0.0, 1e-12);
        }
    }
}

} // namespace
} // namespace mermin
