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

#include "etele/protocol.hpp"

#include <gtest/gtest.h>

#include "etele/literals.hpp"

namespace {

using namespace etele;

constexpr double kTol = 1e-12;

Eigen::Vector2cd input_vector(double r, double phi) {
    return {Complex(0, 1) * std::sqrt(r) * std::polar(1.0, -phi), std::sqrt(1.0 - r)};
}

double fidelity_with_input(const QubitState &rho, double r, double phi) {
    Eigen::Vector2cd v = input_vector(r, phi);
    return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

std::vector<TeleportParams> grid(int n) {
    std::vector<TeleportParams> out;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            out.push_back({static_cast<double>(a) / (n - 1), 2.0 * kPi * b / n, TomographySetting::z});
        }
    }
    return out;
}

const QubitState &as_qubit(const BobConditional &c) {
    return std::get<QubitState>(c);
}

TEST(TeleportParams, Validation) {
    EXPECT_THROW((TeleportParams{1.2, 0.0, TomographySetting::z}.validate()), std::invalid_argument);
    EXPECT_THROW((TeleportParams{0.5, NAN, TomographySetting::z}.validate()), std::invalid_argument);
    EXPECT_DOUBLE_EQ((TeleportParams{0.3, 0.0, TomographySetting::z}.transmission()), 0.7);
}

TEST(TomographyAngles, Settings) {
    EXPECT_EQ(tomography_angles(TomographySetting::x).transmission, 0.5);
    EXPECT_DOUBLE_EQ(tomography_angles(TomographySetting::x).theta, kPi / 2);
    EXPECT_EQ(tomography_angles(TomographySetting::y).transmission, 0.5);
    EXPECT_EQ(tomography_angles(TomographySetting::y).theta, 0.0);
    EXPECT_EQ(tomography_angles(TomographySetting::z).transmission, 1.0);
}

TEST(MeasurementOutcome, LabelsAndEnumeration) {
    auto all = MeasurementOutcome::all();
    ASSERT_EQ(all.size(), 16u);
    EXPECT_EQ(all[0].bits(), "0000");
    EXPECT_EQ(all[15].bits(), "1111");
    EXPECT_EQ(MeasurementOutcome::from_signs('+', '-').bits(), "1001");
    EXPECT_EQ(MeasurementOutcome::from_signs('-', '+').label(), "-+");
    EXPECT_EQ(MeasurementOutcome({{1, 1, 0, 0}}).label(), "1100");
    EXPECT_THROW(MeasurementOutcome::from_signs('+', '0'), std::invalid_argument);
    EXPECT_THROW(PovmElement(MeasurementOutcome{{2, 0, 0, 0}}), std::invalid_argument);
}

TEST(Povm, CompleteForEveryParticleNumber) {
    for (int n = 0; n <= 6; ++n) {
        EXPECT_EQ(povm_completeness_deviation(teleport_premeasurement_modes(), n), 0.0) << n;
    }
}

TEST(Povm, ElementAnnihilatesClickedDetectorMismatch) {
    // E(1010) requires A0m empty: a state with A0m occupied is removed.
    const auto &reg = teleport_premeasurement_modes();
    auto s = create_sources(reg, {"A0p", "A0m", "A1p"});
    EXPECT_EQ(PovmElement(MeasurementOutcome{{1, 0, 1, 0}}).apply(s).probability, 0.0);
    auto t = create_sources(reg, {"A0p", "A1p", "Bp0"});
    EXPECT_EQ(PovmElement(MeasurementOutcome{{1, 0, 1, 0}}).apply(t).probability, 1.0);
}

TEST(Premeasurement, SplitsIntoQubitPartAndRemainder) {
    for (const auto &p : grid(5)) {
        auto psi = run_premeasurement(p, NetworkStage::before_tomography);
        auto t = literal::t_state(p.reflection, p.phi);
        auto r = literal::r_state(p.reflection, p.phi);
        EXPECT_NEAR(std::norm(overlap(t, psi)), 0.25, kTol);
        EXPECT_NEAR(std::norm(overlap(r, psi)), 0.75, kTol);
        EXPECT_LT(std::abs(overlap(t, r)), kTol);
    }
}

TEST(Outcomes, GoodOutcomesEachOneSixteenth) {
    for (const auto &p : grid(6)) {
        double total = 0.0;
        for (const auto &x : MeasurementOutcome::all()) {
            double px = outcome_probability(p, x);
            total += px;
            if (x.one_click_per_arm()) {
                EXPECT_NEAR(px, 1.0 / 16.0, kTol) << x.label();
            }
        }
        EXPECT_NEAR(total, 1.0, kTol);
    }
}

TEST(BobConditional, PlusPlusIsTheInput) {
    for (const auto &p : grid(6)) {
        double prob = 0.0;
        auto rho = as_qubit(bob_conditional(p, MeasurementOutcome::from_signs('+', '+'), std::nullopt, &prob));
        EXPECT_NEAR(prob, 1.0 / 16.0, kTol);
        EXPECT_NEAR(fidelity_with_input(rho, p.reflection, p.phi), 1.0, kTol);
    }
}

TEST(BobConditional, OppositeSignsNeedSigmaZ) {
    for (const auto &p : grid(5)) {
        auto in = QubitState::pure(input_vector(p.reflection, p.phi)(0), input_vector(p.reflection, p.phi)(1));
        for (char s0 : {'+', '-'}) {
            for (char s1 : {'+', '-'}) {
                auto x = MeasurementOutcome::from_signs(s0, s1);
                auto rho = as_qubit(bob_conditional(p, x));
                QubitState expected = s0 == s1 ? in : in.conjugated_by_sigma_z();
                EXPECT_LT((rho.matrix() - expected.matrix()).cwiseAbs().maxCoeff(), 1e-12);
                EXPECT_NEAR(fidelity_with_input(apply_feed_forward(rho, x), p.reflection, p.phi), 1.0, kTol);
            }
        }
    }
}

TEST(BobConditional, OtherOutcomesAreNotQubits) {
    TeleportParams p{0.3, 1.2, TomographySetting::z};
    auto rep = std::get<NonQubitReport>(bob_conditional(p, MeasurementOutcome{{1, 1, 0, 0}}));
    double sum = rep.bob_particle_distribution[0] + rep.bob_particle_distribution[1] + rep.bob_particle_distribution[2];
    EXPECT_NEAR(sum, 1.0, kTol);
    EXPECT_GT(rep.probability, 0.0);
    // No clicks at Alice: all three electrons cannot fit in Bob's two modes.
    EXPECT_THROW(bob_conditional(p, MeasurementOutcome{{0, 0, 0, 0}}), std::domain_error);
    // Four clicks need four electrons.
    EXPECT_THROW(bob_conditional(p, MeasurementOutcome{{1, 1, 1, 1}}), std::domain_error);
    EXPECT_THROW(apply_feed_forward(QubitState::pure(1.0, 0.0), MeasurementOutcome{{1, 1, 0, 0}}),
                 std::invalid_argument);
}

TEST(Correction, Table) {
    EXPECT_EQ(correction_for(MeasurementOutcome::from_signs('+', '+')), Correction::identity);
    EXPECT_EQ(correction_for(MeasurementOutcome::from_signs('-', '-')), Correction::identity);
    EXPECT_EQ(correction_for(MeasurementOutcome::from_signs('+', '-')), Correction::sigma_z);
    EXPECT_EQ(correction_for(MeasurementOutcome::from_signs('-', '+')), Correction::sigma_z);
    EXPECT_EQ(correction_for(MeasurementOutcome{{1, 1, 0, 0}}), Correction::failure);
    EXPECT_EQ(correction_for(MeasurementOutcome{{0, 0, 0, 1}}), Correction::failure);
}

TEST(Efficiency, IndependentOfInput) {
    double lo_ff = 1.0, hi_ff = 0.0, lo = 1.0, hi = 0.0;
    for (const auto &p : grid(10)) {
        double ff = efficiency(true, p);
        double no = efficiency(false, p);
        lo_ff = std::min(lo_ff, ff);
        hi_ff = std::max(hi_ff, ff);
        lo = std::min(lo, no);
        hi = std::max(hi, no);
    }
    EXPECT_NEAR(lo_ff, 0.25, kTol);
    EXPECT_LT(hi_ff - lo_ff, 1e-12);
    EXPECT_NEAR(lo, 0.125, kTol);
    EXPECT_LT(hi - lo, 1e-12);
}

TEST(Tomography, Examples) {
    auto eq = tomography_bloch({0.5, 0.0, TomographySetting::z});
    EXPECT_LT(eq.max_abs_diff({0.0, -1.0, 0.0}), kTol);
    auto north = tomography_bloch({1.0, 0.3, TomographySetting::z});
    EXPECT_LT(north.max_abs_diff({0.0, 0.0, 1.0}), kTol);
    auto south = tomography_bloch({0.0, 0.3, TomographySetting::z});
    EXPECT_LT(south.max_abs_diff({0.0, 0.0, -1.0}), kTol);
}

TEST(Tomography, ReconstructsInputOnGrid) {
    for (const auto &p : grid(5)) {
        auto r = tomography_bloch(p);
        EXPECT_LT(r.max_abs_diff(input_bloch_vector(p.reflection, p.phi)), 1e-12);
        auto direct = as_qubit(bob_conditional(p, MeasurementOutcome::from_signs('+', '+'))).bloch();
        EXPECT_LT(r.max_abs_diff(direct), 1e-12);
    }
}

TEST(Tomography, DenominatorIsOneSixteenth) {
    for (auto s : kTomographySettings) {
        auto t = tomography_terms({0.4, 2.0, s});
        EXPECT_NEAR(t.denominator, 1.0 / 16.0, kTol);
    }
}

TEST(QubitState, ValidationAndBloch) {
    Eigen::Matrix2cd bad;
    bad << 0.5, 0.0, 0.0, 0.6;
    EXPECT_THROW(QubitState{bad}, std::invalid_argument);
    Eigen::Matrix2cd neg;
    neg << 1.2, 0.0, 0.0, -0.2;
    EXPECT_THROW(QubitState{neg}, std::invalid_argument);
    auto plus = QubitState::pure(1.0, 1.0);
    EXPECT_LT(plus.bloch().max_abs_diff({1.0, 0.0, 0.0}), 1e-15);
    auto plus_i = QubitState::pure(1.0, Complex(0, 1));
    EXPECT_LT(plus_i.bloch().max_abs_diff({0.0, 1.0, 0.0}), 1e-15);
    EXPECT_LT(plus.conjugated_by_sigma_z().bloch().max_abs_diff({-1.0, 0.0, 0.0}), 1e-15);
    EXPECT_LT(QubitState::pure(input_vector(0.3, 1.2)(0), input_vector(0.3, 1.2)(1))
                  .bloch()
                  .max_abs_diff(input_bloch_vector(0.3, 1.2)),
              1e-15);
}

TEST(DualRail, BellDecomposition) {
    for (const auto &p : grid(4)) {
        auto rep = drq_projection_checks(p);
        EXPECT_NEAR(rep.projected_norm_squared, 0.5, kTol);
        EXPECT_LT(rep.bell_orthonormality_error, kTol);
        for (double m : rep.term_overlap_moduli) {
            EXPECT_NEAR(m, 1.0 / (2.0 * std::sqrt(2.0)), kTol);
        }
        EXPECT_LT(rep.decomposition_residual, kTol);
        EXPECT_LT(rep.povm_projection_error, kTol);
        // Pairing Phi+ with sigma_x psi instead leaves only |D - R| of the overlap.
        double swapped = std::abs(1.0 - 2.0 * p.reflection) / (2.0 * std::sqrt(2.0));
        EXPECT_NEAR(std::abs(rep.swapped_phi_overlaps[0]), swapped, kTol);
        EXPECT_NEAR(std::abs(rep.swapped_phi_overlaps[1]), swapped, kTol);
    }
}

}  // namespace
