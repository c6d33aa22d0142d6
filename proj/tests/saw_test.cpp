// Copyright 2026 The etele Authors
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

#include "etele/saw.hpp"

#include <gtest/gtest.h>

namespace {

using namespace etele;

const MeasurementOutcome kPlusPlus = MeasurementOutcome::from_signs('+', '+');

TEST(DephasedAnalytic, Limits) {
    TeleportParams p{0.3, 1.2, TomographySetting::z};
    auto pure = dephased_state_analytic(p, 0.0);
    auto exact = std::get<QubitState>(bob_conditional(p, kPlusPlus));
    EXPECT_LT((pure.matrix() - exact.matrix()).cwiseAbs().maxCoeff(), 1e-12);

    auto half = dephased_state_analytic(p, 2.0 * std::log(2.0));
    EXPECT_NEAR(std::abs(half.matrix()(0, 1)), 0.5 * std::abs(pure.matrix()(0, 1)), 1e-15);
    EXPECT_EQ(half.matrix()(0, 0), pure.matrix()(0, 0));

    auto gone = dephased_state_analytic(p, 1e3);
    EXPECT_LT(std::abs(gone.matrix()(0, 1)), 1e-200);
    EXPECT_NEAR(gone.bloch().z, 2.0 * 0.3 - 1.0, 1e-15);
    EXPECT_THROW(dephased_state_analytic(p, -1.0), std::invalid_argument);
}

TEST(DephasingParams, Validation) {
    DephasingParams d;
    d.variances[3] = -0.1;
    EXPECT_THROW(d.validate(), std::invalid_argument);
    EXPECT_DOUBLE_EQ(DephasingParams::uniform(1.2).total(), 1.2);
}

TEST(DephasedMonteCarlo, ZeroNoiseIsExact) {
    TeleportParams p{0.3, 1.2, TomographySetting::z};
    auto mc = dephased_state_montecarlo(p, DephasingParams{}, 50, 1);
    EXPECT_LT((mc.mean.matrix() - dephased_state_analytic(p, 0.0).matrix()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(mc.standard_error_real.maxCoeff(), 1e-12);
}

TEST(DephasedMonteCarlo, AgreesWithAnalyticWithinThreeSigma) {
    TeleportParams p{0.4, 2.1, TomographySetting::z};
    for (double total : {0.5, 1.0, 3.0}) {
        auto mc = dephased_state_montecarlo(p, DephasingParams::uniform(total), 20000, 77);
        auto want = dephased_state_analytic(p, total).matrix();
        for (Eigen::Index r = 0; r < 2; ++r) {
            for (Eigen::Index c = 0; c < 2; ++c) {
                Complex diff = mc.mean.matrix()(r, c) - want(r, c);
                EXPECT_LE(std::abs(diff.real()), 3.0 * mc.standard_error_real(r, c) + 1e-12) << total;
                EXPECT_LE(std::abs(diff.imag()), 3.0 * mc.standard_error_imag(r, c) + 1e-12) << total;
            }
        }
        // Phases on the arms never change the success probability.
        EXPECT_NEAR(mc.min_probability, 1.0 / 16.0, 1e-12);
        EXPECT_NEAR(mc.max_probability, 1.0 / 16.0, 1e-12);
    }
}

TEST(DephasedMonteCarlo, OnlyTheTotalVarianceMatters) {
    TeleportParams p{0.25, 0.6, TomographySetting::z};
    DephasingParams skew;
    skew.variances = {0.0, 0.0, 1.2, 0.0, 0.0, 0.0};
    auto a = dephased_state_montecarlo(p, skew, 20000, 5);
    auto b = dephased_state_montecarlo(p, DephasingParams::uniform(1.2), 20000, 6);
    Complex diff = a.mean.matrix()(0, 1) - b.mean.matrix()(0, 1);
    double se = std::hypot(a.standard_error_real(0, 1), b.standard_error_real(0, 1)) +
                std::hypot(a.standard_error_imag(0, 1), b.standard_error_imag(0, 1));
    EXPECT_LE(std::abs(diff), 4.0 * se);
}

TEST(DephasedMonteCarlo, DeterministicAcrossThreadCounts) {
    TeleportParams p{0.3, 1.2, TomographySetting::z};
    auto params = DephasingParams::uniform(1.0);
    auto one = dephased_state_montecarlo(p, params, 999, 42, 1);
    auto four = dephased_state_montecarlo(p, params, 999, 42, 4);
    EXPECT_EQ(one.mean.matrix(), four.mean.matrix());
    EXPECT_EQ(one.standard_error_real, four.standard_error_real);
    auto other = dephased_state_montecarlo(p, params, 999, 43, 1);
    EXPECT_NE(one.mean.matrix(), other.mean.matrix());
    EXPECT_THROW(dephased_state_montecarlo(p, params, 0, 42), std::invalid_argument);
}

TEST(JozsaFidelity, Examples) {
    BlochVector up{0, 0, 1}, down{0, 0, -1}, center{0, 0, 0}, x{1, 0, 0};
    EXPECT_DOUBLE_EQ(jozsa_fidelity(up, up), 1.0);
    EXPECT_DOUBLE_EQ(jozsa_fidelity(up, down), 0.0);
    EXPECT_DOUBLE_EQ(jozsa_fidelity(up, x), 0.5);
    EXPECT_DOUBLE_EQ(jozsa_fidelity(center, x), 0.5);
    // Two mixed states: 1/2 (1 + r.s + sqrt((1 - |r|^2)(1 - |s|^2))).
    BlochVector r{0.3, 0, 0}, s{0.6, 0, 0};
    EXPECT_NEAR(jozsa_fidelity(r, s), 0.5 * (1.0 + 0.18 + std::sqrt(0.91 * 0.64)), 1e-15);
    EXPECT_THROW(jozsa_fidelity({1.0, 0.1, 0.0}, up), std::invalid_argument);
}

TEST(PerStateFidelity, MatchesJozsaOfDephasedState) {
    for (double r : {0.0, 0.1, 0.5, 0.8, 1.0}) {
        for (double phi : {0.0, 1.0, 3.0}) {
            for (double s2 : {0.0, 0.3, 1.0, 4.0}) {
                TeleportParams p{r, phi, TomographySetting::z};
                double want = jozsa_fidelity(input_bloch_vector(r, phi), dephased_state_analytic(p, s2).bloch());
                EXPECT_NEAR(per_state_fidelity(r, s2), want, 1e-14);
            }
        }
    }
}

TEST(AverageFidelity, LimitsAndMonotone) {
    EXPECT_DOUBLE_EQ(average_fidelity(0.0), 1.0);
    EXPECT_NEAR(average_fidelity(1e4), 2.0 / 3.0, 1e-15);
    double prev = 2.0;
    for (double s2 = 0.0; s2 <= 8.0; s2 += 0.25) {
        double f = average_fidelity(s2);
        EXPECT_LT(f, prev);
        prev = f;
    }
    // Sphere average of the per-state law by quadrature over z = 2R - 1.
    for (double s2 : {0.5, 2.0}) {
        const int n = 2000;
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            double z = -1.0 + (k + 0.5) * 2.0 / n;
            acc += per_state_fidelity((1.0 + z) / 2.0, s2);
        }
        EXPECT_NEAR(acc / n, average_fidelity(s2), 1e-6);
    }
}

TEST(AverageFidelity, SampledAgrees) {
    for (double s2 : {0.0, 1.0, 4.0}) {
        auto s = average_fidelity_sampled(s2, 20000, 9);
        EXPECT_LE(std::abs(s.mean - average_fidelity(s2)), 4.0 * s.standard_error + 1e-12) << s2;
    }
}

}  // namespace
