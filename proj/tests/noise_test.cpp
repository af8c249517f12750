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


#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "test_support.hpp"

namespace mermin {
namespace {

using testing::CMat;

void expect_physical(const DensityMatrix &rho, const std::string &label) {
    ASSERT_NEAR(rho.trace().real(), 1.0, 1e-10) << label;
    ASSERT_NEAR(rho.trace().imag(), 0.0, 1e-10) << label;
    ASSERT_LE(rho.hermiticity_error(), 1e-10) << label;
    const auto dim = static_cast<Eigen::Index>(rho.dim());
    CMat m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = rho(static_cast<Index>(r), static_cast<Index>(c));
        }
    }
    const Eigen::SelfAdjointEigenSolver<CMat> es(m);
    ASSERT_GE(es.eigenvalues().minCoeff(), -1e-9) << label;
}

TEST(NoiseChannel, Validation) {
    EXPECT_THROW((void)NoiseChannel::depolarizing(1.5, 1), Error);
    EXPECT_THROW((void)NoiseChannel::depolarizing(-0.1, 2), Error);
    EXPECT_THROW((void)NoiseChannel::depolarizing(0.1, 3), Error);
    EXPECT_THROW((void)NoiseChannel::bit_flip(2.0), Error);
    EXPECT_THROW(NoiseChannel(std::vector<Mat2>{Mat2{1.0, 0.0, 0.0, 0.5}}), Error);
    EXPECT_THROW(NoiseChannel(std::vector<Mat2>{}), Error);
    EXPECT_NO_THROW(NoiseChannel(std::vector<Mat2>{Mat2{1.0, 0.0, 0.0, 1.0}}));
    DensityMatrix rho(2);
    const std::array<std::size_t, 1> one{0};
    EXPECT_THROW(rho.apply(NoiseChannel::depolarizing(0.1, 2), one), Error);
    EXPECT_THROW(DensityMatrix(7), Error);
}

TEST(NoiseModel, Validation) {
    EXPECT_NO_THROW((NoiseModel{0.0, 1.0, 0.5}).validate());
    EXPECT_THROW((NoiseModel{-0.1, 0.0, 0.0}).validate(), Error);
    EXPECT_THROW((NoiseModel{0.0, 1.1, 0.0}).validate(), Error);
    EXPECT_THROW((NoiseModel{0.0, 0.0, std::nan("")}).validate(), Error);
    EXPECT_THROW((void)noisy_distribution(Circuit(7), NoiseModel{}), Error);
    EXPECT_TRUE(NoiseModel{}.is_zero());
}

TEST(DensityMatrix, PhysicalAfterEveryChannel) {
    const auto one = NoiseChannel::depolarizing(0.07, 1);
    const auto two = NoiseChannel::depolarizing(0.13, 2);
    const auto flip = NoiseChannel::bit_flip(0.2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Circuit c = testing::random_circuit(4, 30, seed);
        DensityMatrix rho(4);
        for (const Gate &g : c.gates()) {
            rho.apply(g);
            if (g.kind == GateKind::CNOT) {
                const std::array<std::size_t, 2> qs{g.control(), g.target()};
                rho.apply(two, qs);
            } else {
                const std::array<std::size_t, 1> qs{g.qubit()};
                rho.apply(one, qs);
                rho.apply(flip, qs);
            }
            expect_physical(rho, "seed " + std::to_string(seed));
        }
    }
}

TEST(DensityMatrix, SingleQubitDepolarizingShrinksBlochVector) {
    for (double p : {0.0, 0.1, 0.5, 1.0}) {
        DensityMatrix rho(1);
        rho.apply(h(0));
        const std::array<std::size_t, 1> q{0};
        rho.apply(NoiseChannel::depolarizing(p, 1), q);
        EXPECT_NEAR(dm_pauli_expectation(rho, PauliString::parse("X")), 1.0 - p, 1e-12);
    }
}

TEST(DensityMatrix, TwoQubitDepolarizingShrinksCorrelators) {
    const double p = 0.3;
    DensityMatrix rho = density_from_state(simulate(ghz_circuit(3, 0)));
    const std::array<std::size_t, 2> q{0, 2};
    rho.apply(NoiseChannel::depolarizing(p, 2), q);
    EXPECT_NEAR(dm_pauli_expectation(rho, PauliString::parse("XXX")), 1.0 - p, 1e-12);
    EXPECT_NEAR(dm_pauli_expectation(rho, PauliString::parse("ZIZ")), 1.0 - p, 1e-12);
    // Z on the untouched qubit correlates with Z on a touched one; both shrink.
    EXPECT_NEAR(dm_pauli_expectation(rho, PauliString::parse("ZZI")), 1.0 - p, 1e-12);
}

TEST(NoisyDistribution, ZeroNoiseEqualsIdealOnFixtures) {
    for (const auto &f : testing::load_fixtures()) {
        if (f.circuit.n_qubits() > kMaxDensityQubits) {
            continue;
        }
        const auto ideal = outcome_distribution(f.circuit).probabilities();
        const auto noisy = noisy_distribution(f.circuit, NoiseModel{}).probabilities();
        for (std::size_t i = 0; i < ideal.size(); ++i) {
            ASSERT_NEAR(ideal[i], noisy[i], 1e-10) << f.name;
        }
        expect_physical(noisy_density(lower_measurement(f.circuit), NoiseModel{0.05, 0.1, 0.0}), f.name);
    }
}

TEST(NoisyDistribution, ReadoutFlipExamples) {
    const auto plus = noisy_distribution(Circuit(1).append(h(0)), NoiseModel{0.0, 0.0, 0.1});
    EXPECT_NEAR(plus.at("0"), 0.5, 1e-12);
    EXPECT_NEAR(plus.at("1"), 0.5, 1e-12);
    const auto one = noisy_distribution(Circuit(1).append(x(0)), NoiseModel{0.0, 0.0, 0.1});
    EXPECT_NEAR(one.at("1"), 0.9, 1e-12);
    const auto two = noisy_distribution(Circuit(2).append(x(0)), NoiseModel{0.0, 0.0, 0.1});
    EXPECT_NEAR(two.at("10"), 0.81, 1e-12);
    EXPECT_NEAR(two.at("11"), 0.09, 1e-12);
    EXPECT_NEAR(two.at("00"), 0.09, 1e-12);
    EXPECT_NEAR(two.at("01"), 0.01, 1e-12);
    EXPECT_THROW((void)apply_readout_flip(two, 1.5), Error);
}

TEST(NoisyDistribution, FullTwoQubitDepolarizingKillsParity) {
    const Circuit c = with_setting(ghz_circuit(3, 2), MeasurementSetting(3, 0b001));
    const auto d = noisy_distribution(c, NoiseModel{0.0, 1.0, 0.0});
    double even = 0.0;
    for (Index i = 0; i < 8; ++i) {
        even += parity_sign(i) > 0 ? d[i] : 0.0;
    }
    EXPECT_NEAR(even, 0.5, 1e-10);
    EXPECT_NEAR(d.parity_expectation(), 0.0, 1e-10);
}

TEST(NoisyDistribution, MatchesDenseKrausOracle) {
    // Independent construction: full-space Kraus sums built with Eigen.
    const Circuit c = lower_measurement(testing::load_fixtures().front().circuit);
    const NoiseModel m{0.04, 0.09, 0.0};
    const std::size_t n = c.n_qubits();
    const auto dim = static_cast<Eigen::Index>(dimension(n));
    CMat rho = CMat::Zero(dim, dim);
    rho(0, 0) = 1.0;
    auto depolarize = [&](const std::vector<std::size_t> &qs, double p) {
        // (1-p) rho + p Tr_qs(rho) (x) I/d, via the Pauli twirl.
        CMat acc = CMat::Zero(dim, dim);
        const std::size_t k = qs.size();
        const std::size_t count = k == 1 ? 4 : 16;
        for (std::size_t idx = 0; idx < count; ++idx) {
            CMat op = CMat::Identity(dim, dim);
            std::size_t rest = idx;
            for (std::size_t q : qs) {
                op = testing::embed(testing::oracle_pauli(static_cast<Pauli>(rest % 4)), q, n) * op;
                rest /= 4;
            }
            acc += op * rho * op.adjoint();
        }
        rho = (1.0 - p) * rho + p * acc / static_cast<double>(count);
    };
    for (const Gate &g : c.gates()) {
        const CMat u = testing::oracle_gate(g, n);
        rho = u * rho * u.adjoint();
        if (g.kind == GateKind::CNOT) {
            depolarize({g.control(), g.target()}, m.depol_2q);
        } else {
            depolarize({g.qubit()}, m.depol_1q);
        }
    }
    const auto d = noisy_distribution(c, m);
    for (Eigen::Index i = 0; i < dim; ++i) {
        ASSERT_NEAR(d[static_cast<Index>(i)], rho(i, i).real(), 1e-12);
    }
}

TEST(Degradation, ZeroNoiseAttainsBound) {
    const auto curve = degradation_curve(3, {NoiseModel{}});
    ASSERT_EQ(curve.size(), 1U);
    EXPECT_NEAR(curve[0].second, 4.0, 1e-8);
    EXPECT_NEAR(exact_mermin_value(4, NoiseModel{}), 8.0 * std::sqrt(2.0), 1e-8);
    EXPECT_NEAR(exact_mermin_value(5, NoiseModel{}), 16.0, 1e-8);
    EXPECT_THROW((void)degradation_curve(6, {NoiseModel{}}), Error);
}

TEST(Degradation, MonotoneInEachParameter) {
    for (std::size_t n : {3, 4, 5}) {
        for (int param = 0; param < 3; ++param) {
            std::vector<NoiseModel> grid;
            for (int i = 0; i < 5; ++i) {
                const double p = 0.025 * i;
                NoiseModel m;
                (param == 0 ? m.depol_1q : param == 1 ? m.depol_2q : m.readout_flip) = p;
                grid.push_back(m);
            }
            const auto curve = degradation_curve(n, grid);
            for (std::size_t i = 1; i < curve.size(); ++i) {
                EXPECT_LE(curve[i].second, curve[i - 1].second + 1e-12) << "n=" << n << " param=" << param;
                EXPECT_LT(curve[i].second, curve[i - 1].second) << "n=" << n << " param=" << param;
            }
        }
    }
}

TEST(Degradation, NormalizedViolationRanksBySize) {
    for (const NoiseModel &m : {NoiseModel{0.0, 0.05, 0.0}, NoiseModel{0.02, 0.0, 0.0},
                                NoiseModel{0.0, 0.0, 0.03}, NoiseModel{0.01, 0.05, 0.02}}) {
        double prev = 2.0;
        for (std::size_t n : {3, 4, 5}) {
            const double v = exact_mermin_value(n, m) / qm_bound(canonical_polynomial(n));
            EXPECT_LE(v, prev + 1e-12) << "n=" << n;
            prev = v;
        }
    }
}

TEST(Degradation, TwoQubitNoiseScalesWithCnotCount) {
    // Every full-weight correlator passes n-1 depolarized CNOTs exactly once.
    for (std::size_t n : {3, 4, 5}) {
        for (double p : {0.05, 0.2}) {
            const double bound = qm_bound(canonical_polynomial(n));
            EXPECT_NEAR(exact_mermin_value(n, NoiseModel{0.0, p, 0.0}),
                        bound * std::pow(1.0 - p, static_cast<double>(n - 1)), 1e-10);
        }
    }
}

TEST(Degradation, CalibrationHitsTarget) {
    const auto cal = calibrate_depol_2q(NoiseModel{}, 2.85);
    EXPECT_NEAR(cal.value, 2.85, 1e-6);
    EXPECT_GE(cal.value, 2.5);
    EXPECT_LE(cal.value, 3.2);
    EXPECT_NEAR(cal.model.depol_2q, 1.0 - std::sqrt(2.85 / 4.0), 1e-6);
    EXPECT_THROW((void)calibrate_depol_2q(NoiseModel{}, 5.0), Error);
}

} // namespace
} // namespace mermin
