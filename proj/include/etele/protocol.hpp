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

// The ideal teleportation run: three electrons are injected, scattered by the
// network, Alice counts electrons at her four detectors, and Bob's
// conditional dual-rail qubit is read out either directly or by occupation
// tomography behind his extra splitter.

#ifndef ETELE_PROTOCOL_HPP
#define ETELE_PROTOCOL_HPP

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "etele/circuit.hpp"
#include "etele/fock.hpp"

namespace etele {

enum class TomographySetting { x, y, z };

inline constexpr std::array<TomographySetting, 3> kTomographySettings{TomographySetting::x, TomographySetting::y,
                                                                      TomographySetting::z};

inline const char *to_string(TomographySetting s) {
    switch (s) {
        case TomographySetting::x:
            return "X";
        case TomographySetting::y:
            return "Y";
        case TomographySetting::z:
            return "Z";
    }
    return "?";
}

/// Bob's splitter transmission D' and phase theta measuring each Bloch component.
struct TomographyAngles {
    double transmission;
    double theta;
};

inline TomographyAngles tomography_angles(TomographySetting s) {
    switch (s) {
        case TomographySetting::x:
            return {0.5, kPi / 2.0};
        case TomographySetting::y:
            return {0.5, 0.0};
        case TomographySetting::z:
            return {1.0, 0.0};
    }
    throw std::logic_error("unhandled tomography setting");
}

/// Input qubit (R, phi) plus Bob's tomography setting.
struct TeleportParams {
    double reflection = 0.5;
    double phi = 0.0;
    TomographySetting setting = TomographySetting::z;

    void validate() const {
        if (!std::isfinite(reflection) || reflection < 0.0 || reflection > 1.0) {
            throw std::invalid_argument("R must lie in [0, 1]");
        }
        if (!std::isfinite(phi)) {
            throw std::invalid_argument("phi must be finite");
        }
    }
    double transmission() const {
        return 1.0 - reflection;
    }
    NetworkSettings network() const {
        auto t = tomography_angles(setting);
        return {reflection, phi, t.transmission, t.theta};
    }
    TeleportParams with_setting(TomographySetting s) const {
        TeleportParams p = *this;
        p.setting = s;
        return p;
    }
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double operator[](size_t i) const {
        return i == 0 ? x : (i == 1 ? y : z);
    }
    double dot(const BlochVector &o) const {
        return x * o.x + y * o.y + z * o.z;
    }
    double norm() const {
        return std::sqrt(dot(*this));
    }
    double max_abs_diff(const BlochVector &o) const {
        return std::max({std::abs(x - o.x), std::abs(y - o.y), std::abs(z - o.z)});
    }
};

/// Bloch vector of the prepared input qubit i sqrt(R) e^{-i phi}|0> + sqrt(D)|1>.
inline BlochVector input_bloch_vector(double reflection, double phi) {
    double rd = std::sqrt(reflection * (1.0 - reflection));
    return {2.0 * rd * std::sin(phi), -2.0 * rd * std::cos(phi), 2.0 * reflection - 1.0};
}

/// Dual-rail qubit density matrix in the (B'0, B'1) basis.
class QubitState {
   public:
    explicit QubitState(const Eigen::Matrix2cd &rho) : rho_(rho) {
        if (!rho_.allFinite()) {
            throw std::invalid_argument("density matrix has non-finite entries");
        }
        if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
            throw std::invalid_argument("density matrix is not Hermitian");
        }
        if (std::abs(rho_.trace() - Complex(1.0)) > 1e-12) {
            throw std::invalid_argument("density matrix trace differs from 1");
        }
        // Hermitian 2x2: eigenvalues (t -/+ sqrt((a-d)^2 + 4|b|^2)) / 2.
        double a = rho_(0, 0).real();
        double d = rho_(1, 1).real();
        double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(rho_(0, 1)));
        if ((a + d - disc) / 2.0 < -1e-12) {
            throw std::invalid_argument("density matrix has a negative eigenvalue");
        }
    }

    static QubitState pure(Complex c0, Complex c1) {
        Eigen::Vector2cd v(c0, c1);
        v /= v.norm();
        return QubitState(v * v.adjoint());
    }

    const Eigen::Matrix2cd &matrix() const {
        return rho_;
    }
    BlochVector bloch() const {
        Complex b = rho_(1, 0);  // <1|rho|0>
        return {2.0 * b.real(), 2.0 * b.imag(), (rho_(0, 0) - rho_(1, 1)).real()};
    }
    QubitState conjugated_by_sigma_z() const {
        Eigen::Matrix2cd m = rho_;
        m(0, 1) = -m(0, 1);
        m(1, 0) = -m(1, 0);
        return QubitState(m);
    }

   private:
    Eigen::Matrix2cd rho_;
};

/// Click pattern (j_A0+, j_A0-, j_A1+, j_A1-) of Alice's four detectors.
struct MeasurementOutcome {
    std::array<int, 4> clicks{0, 0, 0, 0};

    static constexpr std::array<const char *, 4> kDetectors{"A0p", "A0m", "A1p", "A1m"};

    /// One click in arm 0 (sign s0) and one in arm 1 (sign s1); '+' or '-'.
    static MeasurementOutcome from_signs(char s0, char s1) {
        auto check = [](char s) {
            if (s != '+' && s != '-') {
                throw std::invalid_argument("arm sign must be '+' or '-'");
            }
        };
        check(s0);
        check(s1);
        return {{s0 == '+' ? 1 : 0, s0 == '-' ? 1 : 0, s1 == '+' ? 1 : 0, s1 == '-' ? 1 : 0}};
    }

    static std::vector<MeasurementOutcome> all() {
        std::vector<MeasurementOutcome> out;
        for (int b = 0; b < 16; ++b) {
            out.push_back({{(b >> 3) & 1, (b >> 2) & 1, (b >> 1) & 1, b & 1}});
        }
        return out;
    }

    int clicks_total() const {
        return clicks[0] + clicks[1] + clicks[2] + clicks[3];
    }
    bool one_click_per_arm() const {
        return clicks[0] + clicks[1] == 1 && clicks[2] + clicks[3] == 1;
    }
    /// "1010" style bit string.
    std::string bits() const {
        std::string s;
        for (int c : clicks) {
            s += c ? '1' : '0';
        }
        return s;
    }
    /// "++", "+-", ... for one-click-per-arm outcomes, otherwise the bit string.
    std::string label() const {
        if (!one_click_per_arm()) {
            return bits();
        }
        return std::string(1, clicks[0] ? '+' : '-') + (clicks[2] ? '+' : '-');
    }

    bool operator==(const MeasurementOutcome &) const = default;
};

/// Diagonal POVM element prod_i N_i^{j_i} (I - N_i)^{1 - j_i} over Alice's detectors.
class PovmElement {
   public:
    explicit PovmElement(MeasurementOutcome x) : outcome_(x) {
        for (int c : x.clicks) {
            if (c != 0 && c != 1) {
                throw std::invalid_argument("click counts must be 0 or 1");
            }
        }
    }

    const MeasurementOutcome &outcome() const {
        return outcome_;
    }

    /// Eigenvalue (0 or 1) on a configuration of a registry holding Alice's detectors.
    double weight(const ModeRegistry &registry, OccupationConfig c) const {
        for (size_t k = 0; k < 4; ++k) {
            size_t m = registry.index(MeasurementOutcome::kDetectors[k]);
            if (static_cast<int>(c.occupied(m)) != outcome_.clicks[k]) {
                return 0.0;
            }
        }
        return 1.0;
    }

    Projection apply(const FockState &s) const {
        std::array<size_t, 4> modes{};
        for (size_t k = 0; k < 4; ++k) {
            modes[k] = s.registry().index(MeasurementOutcome::kDetectors[k]);
        }
        return project_onto(s, [&](OccupationConfig c) {
            for (size_t k = 0; k < 4; ++k) {
                if (static_cast<int>(c.occupied(modes[k])) != outcome_.clicks[k]) {
                    return false;
                }
            }
            return true;
        });
    }

   private:
    MeasurementOutcome outcome_;
};

inline PovmElement povm_element(const MeasurementOutcome &x) {
    return PovmElement(x);
}

/// Max over all `particles`-particle configurations of |sum_X E(X) - 1|.
inline double povm_completeness_deviation(const ModeRegistry &registry, int particles) {
    auto outcomes = MeasurementOutcome::all();
    double worst = 0.0;
    for (auto c : enumerate_configs(registry.size(), particles)) {
        double sum = 0.0;
        for (const auto &x : outcomes) {
            sum += PovmElement(x).weight(registry, c);
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

/// Three-electron state at the given stage of the network. Stage `sources`
/// lives on (A'0, A'1, A0, A1, B'0, B'1), `before_tomography` on
/// (A0+, A0-, A1+, A1-, B'0, B'1) and `full` on the six detectors.
inline FockState run_premeasurement(const TeleportParams &p, NetworkStage stage,
                                    const std::optional<ArmPhases> &arm_phases = std::nullopt) {
    p.validate();
    static const std::vector<std::string> sources{"S0phi", "S1phi", "Spsi"};
    FockState injected = create_sources(teleport_input_modes(), std::span<const std::string>(sources));
    return lift_apply(teleport_network(p.network(), stage, arm_phases), injected);
}

/// p(X) = <Psi|E(X)|Psi>.
inline double outcome_probability(const TeleportParams &p, const MeasurementOutcome &x) {
    FockState s = run_premeasurement(p, NetworkStage::before_tomography);
    return PovmElement(x).apply(s).probability;
}

/// Outcome after which Bob does not hold a single-electron dual-rail qubit.
struct NonQubitReport {
    MeasurementOutcome outcome;
    double probability = 0.0;
    /// Probability of Bob holding 0, 1, 2 electrons in (B'0, B'1).
    std::array<double, 3> bob_particle_distribution{0.0, 0.0, 0.0};
    /// <N_B'0>, <N_B'1> in the conditional state.
    std::array<double, 2> bob_mode_occupation{0.0, 0.0};
};

using BobConditional = std::variant<QubitState, NonQubitReport>;

/// Bob's state conditioned on Alice observing x. A qubit is returned for the
/// four one-click-per-arm outcomes; otherwise Bob's occupation statistics.
/// Throws std::domain_error when p(x) = 0.
inline BobConditional bob_conditional(const TeleportParams &p, const MeasurementOutcome &x,
                                      const std::optional<ArmPhases> &arm_phases = std::nullopt,
                                      double *probability_out = nullptr) {
    FockState s = run_premeasurement(p, NetworkStage::before_tomography, arm_phases);
    Projection proj = PovmElement(x).apply(s);
    if (!proj.state) {
        throw std::domain_error("outcome " + x.bits() + " has zero probability; conditioning undefined");
    }
    if (probability_out) {
        *probability_out = proj.probability;
    }
    const FockState &cond = *proj.state;
    size_t b0 = cond.registry().index("Bp0");
    size_t b1 = cond.registry().index("Bp1");

    NonQubitReport report{x, proj.probability, {}, {}};
    for (const auto &[c, a] : cond.amplitudes()) {
        double w = std::norm(a);
        int nb = static_cast<int>(c.occupied(b0)) + static_cast<int>(c.occupied(b1));
        report.bob_particle_distribution[static_cast<size_t>(nb)] += w;
        report.bob_mode_occupation[0] += c.occupied(b0) ? w : 0.0;
        report.bob_mode_occupation[1] += c.occupied(b1) ? w : 0.0;
    }
    if (!x.one_click_per_arm() || std::abs(report.bob_particle_distribution[1] - 1.0) > kNormTolerance) {
        return report;
    }
    // Alice's pattern is fixed by E(x) and her modes precede Bob's in the
    // registry, so the amplitudes factor as (Alice ops)(Bob op) with no sign.
    Complex c0 = 0.0;
    Complex c1 = 0.0;
    for (const auto &[c, a] : cond.amplitudes()) {
        (c.occupied(b0) ? c0 : c1) += a;
    }
    return QubitState::pure(c0, c1);
}

/// Correction Bob applies after outcome x: identity, sigma_z, or none (failure).
enum class Correction { identity, sigma_z, failure };

inline Correction correction_for(const MeasurementOutcome &x) {
    if (!x.one_click_per_arm()) {
        return Correction::failure;
    }
    bool same_sign = (x.clicks[0] == 1) == (x.clicks[2] == 1);
    return same_sign ? Correction::identity : Correction::sigma_z;
}

inline QubitState apply_feed_forward(const QubitState &rho, const MeasurementOutcome &x) {
    switch (correction_for(x)) {
        case Correction::identity:
            return rho;
        case Correction::sigma_z:
            return rho.conjugated_by_sigma_z();
        case Correction::failure:
            break;
    }
    throw std::invalid_argument("no correction exists for outcome " + x.bits());
}

/// Total probability of outcomes after which Bob holds the input state: those
/// needing no correction, plus the sigma_z ones when feed-forward is active.
inline double efficiency(bool with_feedforward, const TeleportParams &p = {}) {
    FockState s = run_premeasurement(p, NetworkStage::before_tomography);
    double total = 0.0;
    for (const auto &x : MeasurementOutcome::all()) {
        Correction c = correction_for(x);
        if (c == Correction::identity || (c == Correction::sigma_z && with_feedforward)) {
            total += PovmElement(x).apply(s).probability;
        }
    }
    return total;
}

/// Numerator and denominator of the occupation-number tomography formula for one setting.
struct TomographyTerms {
    double numerator = 0.0;    // <N_A0+ N_A1+ (N_B0 - N_B1)>
    double denominator = 0.0;  // <N_A0+ N_A1+ (I - N_A0- - N_A1-)>
};

inline TomographyTerms tomography_terms(const TeleportParams &p) {
    FockState s = run_premeasurement(p, NetworkStage::full);
    const auto &reg = s.registry();
    size_t a0p = reg.index("A0p"), a0m = reg.index("A0m"), a1p = reg.index("A1p"), a1m = reg.index("A1m");
    size_t b0 = reg.index("B0"), b1 = reg.index("B1");
    auto n = [](OccupationConfig c, size_t m) { return c.occupied(m) ? 1.0 : 0.0; };
    TomographyTerms t;
    t.numerator = expectation_diagonal(s, [&](OccupationConfig c) { return n(c, a0p) * n(c, a1p) * (n(c, b0) - n(c, b1)); });
    t.denominator =
        expectation_diagonal(s, [&](OccupationConfig c) { return n(c, a0p) * n(c, a1p) * (1.0 - n(c, a0m) - n(c, a1m)); });
    return t;
}

/// Bloch vector of Bob's ++ state reconstructed from occupation numbers with
/// the three tomography settings.
inline BlochVector tomography_bloch(const TeleportParams &p_base) {
    std::array<double, 3> r{};
    for (size_t k = 0; k < 3; ++k) {
        TomographyTerms t = tomography_terms(p_base.with_setting(kTomographySettings[k]));
        if (std::abs(t.denominator) < 1e-15) {
            throw std::domain_error("tomography denominator vanishes");
        }
        r[k] = t.numerator / t.denominator;
    }
    return {r[0], r[1], r[2]};
}

// ---------------------------------------------------------------------------
// Dual-rail subspace checks on the state after the source splitters.

enum class BellState { psi_minus, psi_plus, phi_plus, phi_minus };

/// Bell state of two dual-rail qubits on modes (first0, first1) and (second0, second1):
/// Psi(+/-) = (a+_{f0} a+_{s1} +/- a+_{f1} a+_{s0}) / sqrt2, Phi(+/-) = (a+_{f0} a+_{s0} +/- a+_{f1} a+_{s1}) / sqrt2.
inline std::vector<CreationTerm> bell_terms(BellState b, const std::string &f0, const std::string &f1,
                                            const std::string &s0, const std::string &s1) {
    double h = 1.0 / std::sqrt(2.0);
    switch (b) {
        case BellState::psi_minus:
            return {{h, {f0, s1}}, {-h, {f1, s0}}};
        case BellState::psi_plus:
            return {{h, {f0, s1}}, {h, {f1, s0}}};
        case BellState::phi_plus:
            return {{h, {f0, s0}}, {h, {f1, s1}}};
        case BellState::phi_minus:
            return {{h, {f0, s0}}, {-h, {f1, s1}}};
    }
    throw std::logic_error("unhandled Bell state");
}

/// Product of a two-mode-pair term list with a single-particle superposition.
inline std::vector<CreationTerm> times_single(const std::vector<CreationTerm> &pair,
                                              const std::vector<std::pair<Complex, std::string>> &single) {
    std::vector<CreationTerm> out;
    for (const auto &t : pair) {
        for (const auto &[c, label] : single) {
            auto ops = t.ops;
            ops.push_back(label);
            out.push_back({t.coefficient * c, std::move(ops)});
        }
    }
    return out;
}

struct DrqReport {
    /// Squared norm of |Psi> restricted to one electron per (A', A, B') pair.
    double projected_norm_squared = 0.0;
    /// Max |<b_i|b_j> - delta_ij| over the four A-B' Bell states.
    double bell_orthonormality_error = 0.0;
    /// |<term|Psi>| for Psi- (x) psi, Psi+ (x) sigma_z psi, Phi- (x) sigma_x psi, Phi+ (x) i sigma_y psi.
    std::array<double, 4> term_overlap_moduli{};
    /// Norm of Psi_drq - (-i / 2 sqrt2) * (Psi- psi + Psi+ sz psi - Phi- sx psi + Phi+ i sy psi).
    double decomposition_residual = 0.0;
    /// <term|Psi> with the Phi labels paired as (Phi+, sigma_x psi), (Phi-, i sigma_y psi).
    std::array<Complex, 2> swapped_phi_overlaps{};
    /// Max entry deviation of P E(X) P (pulled back through Alice's splitters)
    /// from the Bell-basis projectors, over the six two-click outcomes.
    double povm_projection_error = 0.0;
};

inline DrqReport drq_projection_checks(const TeleportParams &p = {0.3, 1.2, TomographySetting::z}) {
    p.validate();
    DrqReport rep;
    const Complex i(0.0, 1.0);
    const double h = 1.0 / std::sqrt(2.0);
    FockState psi = run_premeasurement(p, NetworkStage::sources);
    const ModeRegistry &reg = psi.registry();  // Ap0 Ap1 A0 A1 Bp0 Bp1

    size_t ap0 = reg.index("Ap0"), ap1 = reg.index("Ap1"), a0 = reg.index("A0"), a1 = reg.index("A1");
    size_t bp0 = reg.index("Bp0"), bp1 = reg.index("Bp1");
    auto dual_rail = [&](OccupationConfig c) {
        return c.occupied(ap0) + c.occupied(ap1) == 1 && c.occupied(a0) + c.occupied(a1) == 1 &&
               c.occupied(bp0) + c.occupied(bp1) == 1;
    };
    Projection drq = project_onto(psi, dual_rail);
    rep.projected_norm_squared = drq.probability;

    // A-B' Bell states on 2 particles.
    {
        ModeRegistry ab{"A0", "A1", "Bp0", "Bp1"};
        std::array<BellState, 4> kinds{BellState::psi_plus, BellState::psi_minus, BellState::phi_plus,
                                       BellState::phi_minus};
        std::vector<FockState> bells;
        for (auto k : kinds) {
            auto terms = bell_terms(k, "A0", "A1", "Bp0", "Bp1");
            bells.push_back(FockState::from_creation_terms(ab, terms));
        }
        for (size_t r = 0; r < 4; ++r) {
            for (size_t c = 0; c < 4; ++c) {
                double target = r == c ? 1.0 : 0.0;
                rep.bell_orthonormality_error =
                    std::max(rep.bell_orthonormality_error, std::abs(overlap(bells[r], bells[c]) - target));
            }
        }
    }

    // Decomposition of the projected state into A'-A Bell states times Bob's qubit.
    Complex a = i * std::sqrt(p.reflection) * std::polar(1.0, -p.phi);
    Complex b = std::sqrt(p.transmission());
    auto aa = [&](BellState k) { return bell_terms(k, "Ap0", "Ap1", "A0", "A1"); };
    std::array<std::vector<CreationTerm>, 4> terms{
        times_single(aa(BellState::psi_minus), {{a, "Bp0"}, {b, "Bp1"}}),
        times_single(aa(BellState::psi_plus), {{a, "Bp0"}, {-b, "Bp1"}}),
        times_single(aa(BellState::phi_minus), {{b, "Bp0"}, {a, "Bp1"}}),
        times_single(aa(BellState::phi_plus), {{b, "Bp0"}, {-a, "Bp1"}}),
    };
    std::array<double, 4> sign{1.0, 1.0, -1.0, 1.0};
    FockState::AmplitudeMap expected;
    for (size_t k = 0; k < 4; ++k) {
        FockState t = FockState::from_creation_terms(reg, terms[k]);
        rep.term_overlap_moduli[k] = std::abs(overlap(t, psi));
        for (const auto &[c, amp] : t.amplitudes()) {
            expected[c] += -i / (2.0 * std::sqrt(2.0)) * sign[k] * amp;
        }
    }
    {
        double res = 0.0;
        for (auto c : enumerate_configs(reg.size(), 3)) {
            Complex have = dual_rail(c) ? psi.amplitude(c) : Complex(0.0);
            auto it = expected.find(c);
            Complex want = it == expected.end() ? Complex(0.0) : it->second;
            res += std::norm(have - want);
        }
        rep.decomposition_residual = std::sqrt(res);
    }
    {
        auto t1 = FockState::from_creation_terms(reg, times_single(aa(BellState::phi_plus), {{b, "Bp0"}, {a, "Bp1"}}));
        auto t2 = FockState::from_creation_terms(reg, times_single(aa(BellState::phi_minus), {{b, "Bp0"}, {-a, "Bp1"}}));
        rep.swapped_phi_overlaps = {overlap(t1, psi), overlap(t2, psi)};
    }

    // Alice's splitters on their own: wires (A0, Ap0, A1, Ap1) -> (A0p, A0m, A1p, A1m).
    {
        CircuitDescription alice{ModeRegistry{"A0", "Ap0", "A1", "Ap1"},
                                 {sym_splitter("A0", "Ap0"), sym_splitter("A1", "Ap1")}};
        static constexpr std::array<size_t, 4> identity_rows{0, 1, 2, 3};
        auto u = compose(alice).permute_rows(ModeRegistry{"A0p", "A0m", "A1p", "A1m"}, identity_rows);
        std::array<BellState, 4> basis{BellState::psi_minus, BellState::psi_plus, BellState::phi_plus,
                                       BellState::phi_minus};
        std::vector<FockState> scattered;
        for (auto k : basis) {
            auto in = FockState::from_creation_terms(u.cols(), aa(k));
            scattered.push_back(lift_apply(u, in));
        }
        // Expected P E(X) P in the basis (Psi-, Psi+, Phi+, Phi-).
        auto projector = [](std::array<double, 4> v) {
            Eigen::Matrix4d m = Eigen::Vector4d(v[0], v[1], v[2], v[3]) * Eigen::RowVector4d(v[0], v[1], v[2], v[3]);
            return m;
        };
        struct Case {
            MeasurementOutcome x;
            Eigen::Matrix4d expected;
        };
        std::vector<Case> cases{
            {{{1, 0, 1, 0}}, projector({h, 0, 0, 0})}, {{{0, 1, 0, 1}}, projector({h, 0, 0, 0})},
            {{{1, 0, 0, 1}}, projector({0, h, 0, 0})}, {{{0, 1, 1, 0}}, projector({0, h, 0, 0})},
            {{{1, 1, 0, 0}}, projector({0, 0, h, h})}, {{{0, 0, 1, 1}}, projector({0, 0, h, -h})},
        };
        for (const auto &cs : cases) {
            PovmElement e(cs.x);
            for (size_t r = 0; r < 4; ++r) {
                for (size_t c = 0; c < 4; ++c) {
                    Complex m = 0.0;
                    for (const auto &[cfg, amp] : scattered[c].amplitudes()) {
                        m += e.weight(scattered[c].registry(), cfg) * std::conj(scattered[r].amplitude(cfg)) * amp;
                    }
                    rep.povm_projection_error = std::max(
                        rep.povm_projection_error,
                        std::abs(m - cs.expected(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
                }
            }
        }
    }
    return rep;
}

}  // namespace etele

#endif  // ETELE_PROTOCOL_HPP
