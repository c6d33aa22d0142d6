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

#include "etele/fock.hpp"

#include <gtest/gtest.h>

#include <Eigen/QR>
#include <numeric>
#include <random>

namespace {

using etele::Complex;
using etele::ComplexMatrix;
using etele::CreationTerm;
using etele::FockState;
using etele::ModeRegistry;
using etele::OccupationConfig;
using etele::SingleParticleUnitary;

ModeRegistry registry_of(size_t m) {
    std::vector<std::string> labels;
    for (size_t i = 0; i < m; ++i) {
        labels.push_back("m" + std::to_string(i));
    }
    return ModeRegistry(labels);
}

ComplexMatrix random_unitary(Eigen::Index m, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix z(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) {
            z(r, c) = Complex(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    return qr.householderQ() * ComplexMatrix::Identity(m, m);
}

FockState random_state(const ModeRegistry &reg, int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    FockState::AmplitudeMap amps;
    double norm = 0.0;
    for (auto c : etele::enumerate_configs(reg.size(), n)) {
        Complex a(g(rng), g(rng));
        amps[c] = a;
        norm += std::norm(a);
    }
    for (auto &[c, a] : amps) {
        a /= std::sqrt(norm);
    }
    return FockState(reg, n, amps);
}

// First-quantized reference: antisymmetrize into the N-fold tensor product,
// apply U to every factor, read back the ordered components.
std::map<std::uint32_t, Complex> first_quantized_apply(const ComplexMatrix &u, const FockState &s) {
    const auto m = static_cast<size_t>(u.rows());
    const auto n = static_cast<size_t>(s.particle_number());
    size_t dim = 1;
    for (size_t k = 0; k < n; ++k) {
        dim *= m;
    }
    auto flat = [&](const std::vector<size_t> &idx) {
        size_t f = 0;
        for (size_t v : idx) {
            f = f * m + v;
        }
        return f;
    };
    double fact = 1.0;
    for (size_t k = 2; k <= n; ++k) {
        fact *= static_cast<double>(k);
    }
    std::vector<Complex> psi(dim, 0.0);
    for (const auto &[cfg, amp] : s.amplitudes()) {
        auto modes = cfg.modes();
        std::vector<size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            int inversions = 0;
            for (size_t i = 0; i < n; ++i) {
                for (size_t j = i + 1; j < n; ++j) {
                    inversions += perm[i] > perm[j] ? 1 : 0;
                }
            }
            std::vector<size_t> idx(n);
            for (size_t i = 0; i < n; ++i) {
                idx[i] = modes[perm[i]];
            }
            psi[flat(idx)] += (inversions % 2 ? -1.0 : 1.0) * amp / std::sqrt(fact);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    for (size_t factor = 0; factor < n; ++factor) {
        std::vector<Complex> next(dim, 0.0);
        for (size_t f = 0; f < dim; ++f) {
            if (psi[f] == Complex(0.0)) {
                continue;
            }
            size_t stride = 1;
            for (size_t k = factor + 1; k < n; ++k) {
                stride *= m;
            }
            size_t digit = (f / stride) % m;
            for (size_t out = 0; out < m; ++out) {
                next[f - digit * stride + out * stride] += u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(digit)) * psi[f];
            }
        }
        psi = std::move(next);
    }
    std::map<std::uint32_t, Complex> result;
    for (auto c : etele::enumerate_configs(m, static_cast<int>(n))) {
        result[c.bits] = std::sqrt(fact) * psi[flat(c.modes())];
    }
    return result;
}

TEST(ModeRegistry, RejectsDuplicatesAndUnknownLabels) {
    EXPECT_THROW(ModeRegistry({"a", "b", "a"}), std::invalid_argument);
    EXPECT_THROW(ModeRegistry({""}), std::invalid_argument);
    ModeRegistry r{"a", "b"};
    EXPECT_EQ(r.index("b"), 1u);
    EXPECT_FALSE(r.find("c"));
    EXPECT_THROW(r.index("c"), std::invalid_argument);
    EXPECT_THROW(registry_of(17), std::invalid_argument);
}

TEST(FockState, ValidatesNormAndParticleNumber) {
    ModeRegistry r{"a", "b"};
    EXPECT_THROW(FockState(r, 1, {{OccupationConfig{1}, 0.5}}), std::invalid_argument);
    EXPECT_THROW(FockState(r, 1, {{OccupationConfig{3}, 1.0}}), std::invalid_argument);
    EXPECT_THROW(FockState(r, 3, {}), std::invalid_argument);
    FockState vac(r, 0, {{OccupationConfig{0}, 1.0}});
    EXPECT_EQ(vac.particle_number(), 0);
}

TEST(FockState, CreationTermSignsFollowOperatorOrder) {
    ModeRegistry r{"a", "b", "c"};
    std::vector<CreationTerm> ba{{1.0, {"b", "a"}}};
    auto s = FockState::from_creation_terms(r, ba);
    EXPECT_EQ(s.amplitude(OccupationConfig{0b011}), Complex(-1.0));
    std::vector<CreationTerm> cab{{1.0, {"c", "a", "b"}}};
    EXPECT_EQ(FockState::from_creation_terms(r, cab).amplitude(OccupationConfig{0b111}), Complex(1.0));
    std::vector<CreationTerm> bac{{1.0, {"b", "a", "c"}}};
    EXPECT_EQ(FockState::from_creation_terms(r, bac).amplitude(OccupationConfig{0b111}), Complex(-1.0));
    // a^dag a^dag vanishes, leaving only the second term.
    std::vector<CreationTerm> twice{{1.0, {"a", "a"}}, {1.0, {"a", "b"}}};
    EXPECT_EQ(FockState::from_creation_terms(r, twice).amplitude(OccupationConfig{0b011}), Complex(1.0));
    std::vector<CreationTerm> mixed{{1.0, {"a"}}, {1.0, {"a", "b"}}};
    EXPECT_THROW(FockState::from_creation_terms(r, mixed), std::invalid_argument);
}

TEST(CreateSources, PauliExclusion) {
    ModeRegistry r{"a", "b", "c"};
    auto s = etele::create_sources(r, {"a", "c"});
    EXPECT_EQ(s.amplitude(OccupationConfig{0b101}), Complex(1.0));
    EXPECT_THROW(etele::create_sources(r, {"a", "a"}), std::invalid_argument);
    EXPECT_THROW(etele::create_sources(r, {"z"}), std::invalid_argument);
}

TEST(SmallDeterminant, MatchesEigen) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    for (size_t n = 1; n <= 8; ++n) {
        ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        std::array<Complex, etele::kMaxParticles * etele::kMaxParticles> flat{};
        for (size_t r = 0; r < n; ++r) {
            for (size_t c = 0; c < n; ++c) {
                Complex z(g(rng), g(rng));
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z;
                flat[r * n + c] = z;
            }
        }
        Complex want = m.determinant();
        EXPECT_LT(std::abs(etele::small_determinant(flat, n) - want), 1e-12 * std::max(1.0, std::abs(want))) << n;
    }
    std::array<Complex, etele::kMaxParticles * etele::kMaxParticles> swap{};
    swap[1] = 1.0;
    swap[2] = 1.0;
    EXPECT_EQ(etele::small_determinant(swap, 2), Complex(-1.0));
}

TEST(LiftApply, MatchesFirstQuantizedReference) {
    std::mt19937_64 rng(2026);
    for (size_t m = 1; m <= 4; ++m) {
        for (int n = 0; n <= std::min<int>(3, static_cast<int>(m)); ++n) {
            for (int trial = 0; trial < 5; ++trial) {
                auto reg = registry_of(m);
                SingleParticleUnitary u(random_unitary(static_cast<Eigen::Index>(m), rng), reg, reg);
                auto s = random_state(reg, n, rng);
                auto got = etele::lift_apply(u, s);
                auto want = first_quantized_apply(u.matrix(), s);
                for (const auto &[bits, a] : want) {
                    EXPECT_LT(std::abs(got.amplitude(OccupationConfig{bits}) - a), 1e-12)
                        << "M=" << m << " N=" << n << " cfg=" << bits;
                }
            }
        }
    }
}

TEST(LiftApply, PreservesNormAndComposes) {
    std::mt19937_64 rng(99);
    auto reg = registry_of(6);
    for (int trial = 0; trial < 10; ++trial) {
        SingleParticleUnitary u1(random_unitary(6, rng), reg, reg);
        SingleParticleUnitary u2(random_unitary(6, rng), reg, reg);
        auto s = random_state(reg, 3, rng);
        auto step = etele::lift_apply(u2, etele::lift_apply(u1, s));
        auto once = etele::lift_apply(etele::then(u1, u2), s);
        EXPECT_NEAR(step.norm_squared(), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(etele::overlap(step, once)), 1.0, 1e-12);
    }
}

TEST(LiftApply, IdentityAndVacuum) {
    std::mt19937_64 rng(3);
    auto reg = registry_of(5);
    SingleParticleUnitary id(ComplexMatrix::Identity(5, 5), reg, reg);
    auto s = random_state(reg, 2, rng);
    auto out = etele::lift_apply(id, s);
    EXPECT_NEAR(std::abs(etele::overlap(s, out) - 1.0), 0.0, 1e-14);

    SingleParticleUnitary u(random_unitary(5, rng), reg, reg);
    FockState vac(reg, 0, {{OccupationConfig{0}, 1.0}});
    EXPECT_EQ(etele::lift_apply(u, vac).amplitude(OccupationConfig{0}), Complex(1.0));
}

TEST(LiftApply, SymmetricSplitterOnOneParticle) {
    ModeRegistry reg{"a", "b"};
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m << Complex(0, s), s, s, Complex(0, s);
    SingleParticleUnitary u(m, reg, reg);
    auto out = etele::lift_apply(u, etele::create_sources(reg, {"a"}));
    EXPECT_LT(std::abs(out.amplitude(OccupationConfig{0b01}) - Complex(0, s)), 1e-15);
    EXPECT_LT(std::abs(out.amplitude(OccupationConfig{0b10}) - Complex(s, 0)), 1e-15);
    // Two fermions on a symmetric splitter leave one in each port.
    auto both = etele::lift_apply(u, etele::create_sources(reg, {"a", "b"}));
    EXPECT_NEAR(std::abs(both.amplitude(OccupationConfig{0b11})), 1.0, 1e-15);
}

TEST(LiftApply, RejectsMismatchedRegistry) {
    ModeRegistry a{"a", "b"};
    ModeRegistry b{"x", "y"};
    SingleParticleUnitary u(ComplexMatrix::Identity(2, 2), a, a);
    EXPECT_THROW(etele::lift_apply(u, etele::create_sources(b, {"x"})), std::invalid_argument);
}

TEST(SingleParticleUnitary, RejectsNonUnitary) {
    ModeRegistry r{"a", "b"};
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = 1e-6;
    EXPECT_THROW(SingleParticleUnitary(m, r, r), std::invalid_argument);
    EXPECT_THROW(SingleParticleUnitary(ComplexMatrix::Identity(3, 3), r, r), std::invalid_argument);
}

TEST(Projection, ChainedNumberProjections) {
    // Four particles spread by a 50:50 splitter per pair: each click pattern has weight 1/16.
    ModeRegistry reg = registry_of(8);
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    for (Eigen::Index k = 0; k < 8; k += 2) {
        m(k, k) = Complex(0, s);
        m(k, k + 1) = s;
        m(k + 1, k) = s;
        m(k + 1, k + 1) = Complex(0, s);
    }
    SingleParticleUnitary u(m, reg, reg);
    auto st = etele::lift_apply(u, etele::create_sources(reg, {"m0", "m2", "m4", "m6"}));
    double p = 1.0;
    FockState cur = st;
    for (const char *label : {"m0", "m3", "m4", "m7"}) {
        auto pr = etele::project_number(cur, label, 1);
        ASSERT_TRUE(pr.state);
        p *= pr.probability;
        cur = *pr.state;
    }
    EXPECT_NEAR(p, 1.0 / 16.0, 1e-15);
    EXPECT_NEAR(cur.norm_squared(), 1.0, 1e-14);

    auto none = etele::project_number(etele::create_sources(reg, {"m0"}), "m1", 1);
    EXPECT_EQ(none.probability, 0.0);
    EXPECT_FALSE(none.state);
    EXPECT_THROW(etele::project_number(st, "m0", 2), std::invalid_argument);
}

TEST(OccupationMoments, ExamplesAndErrors) {
    ModeRegistry reg{"a", "b"};
    const double s = 1.0 / std::sqrt(2.0);
    // One particle in (|a> + |b>)/sqrt 2: means 1/2, covariance -1/4, variance 1/4.
    FockState st(reg, 1, {{OccupationConfig{0b01}, s}, {OccupationConfig{0b10}, s}});
    EXPECT_NEAR(etele::occupation_moments(st, {"a"}), 0.5, 1e-15);
    EXPECT_NEAR(etele::occupation_moments(st, {"a", "b"}), -0.25, 1e-15);
    EXPECT_THROW(etele::occupation_moments(st, {"a", "a"}), std::invalid_argument);
    EXPECT_THROW(etele::occupation_moments(st, {"a", "b", "a", "b"}), std::invalid_argument);

    ModeRegistry three{"a", "b", "c"};
    FockState w(three, 1, {{OccupationConfig{0b001}, std::sqrt(0.2)}, {OccupationConfig{0b010}, std::sqrt(0.3)},
                           {OccupationConfig{0b100}, std::sqrt(0.5)}});
    // Third central moment from the definition.
    const double p[3] = {0.2, 0.3, 0.5};
    double want = 0.0;
    for (int k = 0; k < 3; ++k) {
        double prod = 1.0;
        for (int j = 0; j < 3; ++j) {
            prod *= (j == k ? 1.0 : 0.0) - p[j];
        }
        want += p[k] * prod;
    }
    EXPECT_NEAR(etele::occupation_moments(w, {"a", "b", "c"}), want, 1e-15);
}

TEST(Overlap, Properties) {
    std::mt19937_64 rng(11);
    auto reg = registry_of(4);
    auto a = random_state(reg, 2, rng);
    auto b = random_state(reg, 2, rng);
    EXPECT_NEAR(std::abs(etele::overlap(a, a) - 1.0), 0.0, 1e-14);
    EXPECT_LT(std::abs(etele::overlap(a, b) - std::conj(etele::overlap(b, a))), 1e-15);
    EXPECT_EQ(etele::overlap(a, etele::create_sources(reg, {"m0"})), Complex(0.0));
    EXPECT_THROW(etele::overlap(a, random_state(registry_of(5), 2, rng)), std::invalid_argument);
}

}  // namespace
