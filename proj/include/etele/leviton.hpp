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

// Leviton implementation: photoassisted amplitudes of a periodic Lorentzian
// drive, thermal suppression of the noise cumulants, and the zero-frequency
// current correlators that stand in for single-shot occupation numbers.
//
// Units: e = hbar = period = 1. Currents are in e/T, pair correlators in
// e^2/T and triple correlators in e^3/T.

#ifndef ETELE_LEVITON_HPP
#define ETELE_LEVITON_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "etele/numeric.hpp"
#include "etele/protocol.hpp"

namespace etele {

struct LevitonParams {
    double gamma = 0.05;     // pulse width over period
    double tau = 0.0;        // k_B T / (hbar Omega)
    double epsilon = 1e-12;  // relative series tolerance
    int n_max = 0;           // 0 selects max(200, ceil(10 / gamma))

    void validate() const {
        if (!std::isfinite(gamma) || gamma <= 0.0) {
            throw std::invalid_argument("gamma must be positive");
        }
        if (!std::isfinite(tau) || tau < 0.0) {
            throw std::invalid_argument("tau must be non-negative");
        }
        if (!std::isfinite(epsilon) || epsilon <= 0.0) {
            throw std::invalid_argument("epsilon must be positive");
        }
        if (n_max < 0) {
            throw std::invalid_argument("n_max must be non-negative");
        }
    }
    int effective_n_max() const {
        return n_max > 0 ? n_max : std::max(200, static_cast<int>(std::ceil(10.0 / gamma)));
    }
};

class NonConvergence : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Floquet amplitude S(n) of a Lorentzian pulse train, closed form.
inline Complex photoassist_amplitude(int n, double gamma) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("gamma must be positive");
    }
    double x = 2.0 * kPi * gamma;
    if (n < 0) {
        return 0.0;
    }
    if (n == 0) {
        return std::exp(-x);
    }
    return -2.0 * std::exp(-static_cast<double>(n) * x) * std::sinh(x);
}

/// Fourier coefficients of exp(i phi(t)) over one period, computed from the
/// pulse sum directly. Pulses |j| <= J are summed explicitly and the rest of
/// the odd tail is replaced by its leading term 4 gamma t / (J + 1/2); the
/// trapezoid rule on `samples` points is spectrally accurate for this
/// periodic integrand.
class PhotoassistOracle {
   public:
    explicit PhotoassistOracle(double gamma, double epsilon = 1e-9, size_t samples = 4096) : gamma_(gamma) {
        if (!(gamma > 0.0) || !(epsilon > 0.0) || samples < 16) {
            throw std::invalid_argument("invalid oracle parameters");
        }
        auto pulses = std::max<long>(64, static_cast<long>(std::ceil(std::cbrt(4.0 * gamma / epsilon))));
        factor_.resize(samples);
        for (size_t k = 0; k < samples; ++k) {
            double t = static_cast<double>(k) / static_cast<double>(samples);
            double phase = 2.0 * std::atan(t / gamma) + kPi;
            for (long j = 1; j <= pulses; ++j) {
                auto dj = static_cast<double>(j);
                phase += 2.0 * std::atan((t - dj) / gamma) + 2.0 * std::atan((t + dj) / gamma);
            }
            phase += 4.0 * gamma * t / (static_cast<double>(pulses) + 0.5);
            factor_[k] = std::polar(1.0, -phase);
        }
    }

    double gamma() const {
        return gamma_;
    }

    Complex operator()(int n) const {
        auto m = static_cast<double>(factor_.size());
        std::vector<Complex> terms(factor_.size());
        for (size_t k = 0; k < factor_.size(); ++k) {
            terms[k] = std::polar(1.0, 2.0 * kPi * static_cast<double>(n) * static_cast<double>(k) / m) * factor_[k];
        }
        return pairwise_sum(std::span<const Complex>(terms)) / m;
    }

   private:
    double gamma_;
    std::vector<Complex> factor_;
};

inline Complex photoassist_amplitude_oracle(int n, double gamma) {
    return PhotoassistOracle(gamma)(n);
}

/// Sum of |S(n)|^2 over n = 0 .. n_max.
inline double photoassist_norm(double gamma, int n_max) {
    double s = 0.0;
    for (int n = n_max; n >= 0; --n) {
        s += std::norm(photoassist_amplitude(n, gamma));
    }
    return s;
}

/// coth(y) - 1/y, the weight of the pair cumulant at y = n / (2 tau).
inline double thermal_kernel_pair(double y) {
    if (y < 0.25) {
        double y2 = y * y;
        return y * (1.0 / 3.0 +
                    y2 * (-1.0 / 45.0 +
                          y2 * (2.0 / 945.0 +
                                y2 * (-1.0 / 4725.0 +
                                      y2 * (2.0 / 93555.0 +
                                            y2 * (-1382.0 / 638512875.0 +
                                                  y2 * (4.0 / 18243225.0 + y2 * (-3617.0 / 162820783125.0))))))));
    }
    return 1.0 / std::tanh(y) - 1.0 / y;
}

/// coth^2(y) + csch^2(y) / 2 - (3 / (2y)) coth(y), the weight of the triple cumulant.
inline double thermal_kernel_triple(double y) {
    if (y < 0.25) {
        double y2 = y * y;
        return y2 * (2.0 / 15.0 +
                     y2 * (-2.0 / 105.0 +
                           y2 * (4.0 / 1575.0 +
                                 y2 * (-2.0 / 6237.0 +
                                       y2 * (2764.0 / 70945875.0 +
                                             y2 * (-4.0 / 868725.0 + y2 * (28936.0 / 54273594375.0)))))));
    }
    double coth = 1.0 / std::tanh(y);
    double csch = 1.0 / std::sinh(y);
    return coth * coth + 0.5 * csch * csch - 1.5 / y * coth;
}

struct ThermalFactors {
    double f = 1.0;  // pair correlator factor
    double a = 1.0;  // triple correlator factor
    double q = 1.0;  // a / f
    int terms = 0;   // series terms summed
};

inline ThermalFactors thermal_factors(const LevitonParams &p) {
    p.validate();
    int n_max = p.effective_n_max();
    // Terms grow until n ~ 1 / (4 pi gamma) and then decay geometrically;
    // past the peak the remaining tail is estimated from the last term ratio.
    int n_peak = static_cast<int>(std::ceil(1.0 / (4.0 * kPi * p.gamma))) + 1;
    double f = 0.0;
    double a = 0.0;
    double prev_tf = 0.0;
    double prev_ta = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        double w = static_cast<double>(n) * std::norm(photoassist_amplitude(n, p.gamma));
        double kf = 1.0;
        double ka = 1.0;
        if (p.tau > 0.0) {
            double y = static_cast<double>(n) / (2.0 * p.tau);
            kf = thermal_kernel_pair(y);
            ka = thermal_kernel_triple(y);
        }
        double tf = w * kf;
        double ta = w * ka;
        f += tf;
        a += ta;
        if (n > n_peak && prev_tf > 0.0 && prev_ta > 0.0) {
            double rf = tf / prev_tf;
            double ra = ta / prev_ta;
            bool decaying = rf < 1.0 && ra < 1.0;
            if (decaying && tf * rf / (1.0 - rf) <= p.epsilon * f && ta * ra / (1.0 - ra) <= p.epsilon * a) {
                if (!(f > 0.0) || !(a > 0.0)) {
                    throw NonConvergence("thermal factors vanished");
                }
                double q = a / f;
                if (q > 1.0 + 1e-9) {
                    throw std::runtime_error("thermal factor ratio exceeds 1: q = " + format_double(q));
                }
                return {f, a, q, n};
            }
        }
        prev_tf = tf;
        prev_ta = ta;
    }
    throw NonConvergence("thermal series did not converge within " + std::to_string(n_max) +
                         " terms (gamma = " + format_double(p.gamma) + ", tau = " + format_double(p.tau) + ")");
}

/// Averaged teleportation fidelity (2 + q) / 3.
inline double leviton_fidelity(const LevitonParams &p) {
    return (2.0 + thermal_factors(p).q) / 3.0;
}

struct FidelityPoint {
    double gamma;
    double tau;
    ThermalFactors factors;
    double fidelity;
};

/// Fidelity on the (gamma, tau) grid, rows ordered gamma-major in input order.
inline std::vector<FidelityPoint> fidelity_curve(const std::vector<double> &gammas, const std::vector<double> &taus,
                                                 unsigned threads = 0) {
    if (gammas.empty() || taus.empty()) {
        throw std::invalid_argument("fidelity_curve needs non-empty grids");
    }
    std::vector<FidelityPoint> out(gammas.size() * taus.size());
    parallel_for_index(
        out.size(),
        [&](size_t i) {
            LevitonParams p;
            p.gamma = gammas[i / taus.size()];
            p.tau = taus[i % taus.size()];
            auto tf = thermal_factors(p);
            out[i] = {p.gamma, p.tau, tf, (2.0 + tf.q) / 3.0};
        },
        threads);
    return out;
}

// ---------------------------------------------------------------------------
// Zero-frequency correlators.

enum class Detector { A0p, A0m, A1p, A1m, B0, B1 };

inline constexpr std::array<Detector, 6> kDetectors{Detector::A0p, Detector::A0m, Detector::A1p,
                                                    Detector::A1m, Detector::B0,  Detector::B1};

inline const char *to_string(Detector d) {
    static constexpr std::array<const char *, 6> names{"A0p", "A0m", "A1p", "A1m", "B0", "B1"};
    return names[static_cast<size_t>(d)];
}

/// Current I, pair correlator P, or triple correlator Q.
enum class CorrelatorKind { current = 1, pair = 2, triple = 3 };

inline const char *to_string(CorrelatorKind k) {
    switch (k) {
        case CorrelatorKind::current:
            return "I";
        case CorrelatorKind::pair:
            return "P";
        case CorrelatorKind::triple:
            return "Q";
    }
    return "?";
}

inline const char *unit_of(CorrelatorKind k) {
    switch (k) {
        case CorrelatorKind::current:
            return "e/T";
        case CorrelatorKind::pair:
            return "e^2/T";
        case CorrelatorKind::triple:
            return "e^3/T";
    }
    return "?";
}

struct CorrelatorKey {
    CorrelatorKind kind;
    std::vector<Detector> detectors;  // sorted, distinct
    TomographySetting setting;

    static CorrelatorKey make(std::vector<Detector> detectors, TomographySetting setting) {
        if (detectors.empty() || detectors.size() > 3) {
            throw std::invalid_argument("correlators involve 1 to 3 detectors");
        }
        std::sort(detectors.begin(), detectors.end());
        if (std::adjacent_find(detectors.begin(), detectors.end()) != detectors.end()) {
            throw std::invalid_argument("repeated detector in correlator key");
        }
        return {static_cast<CorrelatorKind>(detectors.size()), std::move(detectors), setting};
    }

    /// e.g. "P_A0p_B1".
    std::string name() const {
        std::string s = to_string(kind);
        for (auto d : detectors) {
            s += '_';
            s += to_string(d);
        }
        return s;
    }

    auto operator<=>(const CorrelatorKey &) const = default;
    bool operator==(const CorrelatorKey &) const = default;
};

using CorrelatorTable = std::map<CorrelatorKey, double>;

/// Lookup that names the missing key on failure.
inline double correlator(const CorrelatorTable &t, std::vector<Detector> detectors, TomographySetting s) {
    auto key = CorrelatorKey::make(std::move(detectors), s);
    auto it = t.find(key);
    if (it == t.end()) {
        throw std::out_of_range("correlator table lacks " + key.name() + " for setting " + to_string(s));
    }
    return it->second;
}

/// Detector tuples tabulated for each setting: six currents, ten pair and
/// four triple correlators.
inline std::vector<std::vector<Detector>> tabulated_correlator_tuples() {
    using D = Detector;
    return {
        {D::A0p}, {D::A0m}, {D::A1p}, {D::A1m}, {D::B0}, {D::B1},
        {D::A0p, D::A1p}, {D::A0p, D::A1m}, {D::A0m, D::A1p}, {D::A0m, D::A1m},
        {D::A0p, D::B0}, {D::A1p, D::B1}, {D::A0p, D::A0m}, {D::A1p, D::A1m},
        {D::A0p, D::B1}, {D::A1p, D::B0},
        {D::A0p, D::A1p, D::B0}, {D::A0p, D::A1p, D::B1}, {D::A0p, D::A0m, D::A1p}, {D::A0p, D::A1p, D::A1m},
    };
}

/// Closed-form zero-temperature values of every tabulated entry.
inline CorrelatorTable correlator_closed_form(double reflection, double phi, TomographySetting s) {
    using D = Detector;
    double r = reflection;
    double d = 1.0 - r;
    double rd = std::sqrt(r * d);
    bool z = s == TomographySetting::z;
    double q_b0 = 0.0;
    if (s == TomographySetting::x) {
        q_b0 = rd * std::sin(phi) / 16.0;
    } else if (s == TomographySetting::y) {
        q_b0 = -rd * std::cos(phi) / 16.0;
    }
    CorrelatorTable t;
    auto put = [&](std::vector<Detector> k, double v) { t[CorrelatorKey::make(std::move(k), s)] = v; };
    put({D::A0p}, 0.25 + r / 2.0);
    put({D::A0m}, 0.25 + r / 2.0);
    put({D::A1p}, 0.25 + d / 2.0);
    put({D::A1m}, 0.25 + d / 2.0);
    put({D::B0}, 0.5);
    put({D::B1}, 0.5);
    for (auto a0 : {D::A0p, D::A0m}) {
        for (auto a1 : {D::A1p, D::A1m}) {
            put({a0, a1}, -r * d / 4.0);
        }
    }
    put({D::A0p, D::B0}, z ? -1.0 / 8.0 : -1.0 / 16.0);
    put({D::A1p, D::B1}, z ? -1.0 / 8.0 : -1.0 / 16.0);
    put({D::A0p, D::A0m}, -(1.0 / 16.0 - r * d / 4.0));
    put({D::A1p, D::A1m}, -(1.0 / 16.0 - r * d / 4.0));
    put({D::A0p, D::B1}, z ? 0.0 : -1.0 / 16.0);
    put({D::A1p, D::B0}, z ? 0.0 : -1.0 / 16.0);
    put({D::A0p, D::A1p, D::B0}, q_b0);
    put({D::A0p, D::A1p, D::B1}, -q_b0);
    put({D::A0p, D::A0m, D::A1p}, r * d * (r - d) / 8.0);
    put({D::A0p, D::A1p, D::A1m}, r * d * (d - r) / 8.0);
    return t;
}

/// Occupation cumulants of the three-electron model, read as zero-frequency
/// correlators: I = <N>, P = <dN dN>, Q = <dN dN dN> per period.
inline CorrelatorTable zero_T_correlators(double reflection, double phi, TomographySetting s) {
    TeleportParams p{reflection, phi, s};
    FockState state = run_premeasurement(p, NetworkStage::full);
    CorrelatorTable t;
    for (auto &tuple : tabulated_correlator_tuples()) {
        std::vector<std::string> labels;
        for (auto d : tuple) {
            labels.emplace_back(to_string(d));
        }
        t[CorrelatorKey::make(tuple, s)] = occupation_moments(state, std::span<const std::string>(labels));
    }
    return t;
}

/// Scales pair entries by f and triple entries by a; currents are unchanged.
inline CorrelatorTable finite_T_correlators(const CorrelatorTable &table, double f, double a) {
    if (!(f > 0.0 && f <= 1.0) || !(a > 0.0 && a <= 1.0)) {
        throw std::invalid_argument("thermal factors must lie in (0, 1]");
    }
    CorrelatorTable out = table;
    for (auto &[key, value] : out) {
        if (key.kind == CorrelatorKind::pair) {
            value *= f;
        } else if (key.kind == CorrelatorKind::triple) {
            value *= a;
        }
    }
    return out;
}

struct CorrelatorBloch {
    double component;  // J / K
    double k;          // p(+,+) estimate
    double j;
};

/// One Bloch component of Bob's ++ state assembled from currents and cumulants.
inline CorrelatorBloch bloch_from_correlators(const CorrelatorTable &t, TomographySetting s) {
    using D = Detector;
    auto c = [&](std::vector<Detector> k) { return correlator(t, std::move(k), s); };
    double i0p = c({D::A0p}), i0m = c({D::A0m}), i1p = c({D::A1p}), i1m = c({D::A1m});
    double ib0 = c({D::B0}), ib1 = c({D::B1});
    double j = (c({D::A0p, D::A1p, D::B0}) - c({D::A0p, D::A1p, D::B1})) + c({D::A0p, D::A1p}) * (ib0 - ib1) +
               i1p * (c({D::A0p, D::B0}) - c({D::A0p, D::B1})) + i0p * (c({D::A1p, D::B0}) - c({D::A1p, D::B1})) +
               i0p * i1p * (ib0 - ib1);
    double k = i0p * i1p * (1.0 - (i0m + i1m)) -
               (i0p * (c({D::A0m, D::A1p}) + c({D::A1p, D::A1m})) + i1p * (c({D::A0p, D::A0m}) + c({D::A0p, D::A1m}))) -
               (c({D::A0p, D::A0m, D::A1p}) + c({D::A0p, D::A1p, D::A1m}));
    if (!(k > 0.0)) {
        throw std::domain_error("correlator denominator K is not positive: " + format_double(k));
    }
    return {j / k, k, j};
}

/// Full Bloch vector from the three per-setting tables merged into one.
inline BlochVector bloch_vector_from_correlators(const CorrelatorTable &t) {
    return {bloch_from_correlators(t, TomographySetting::x).component,
            bloch_from_correlators(t, TomographySetting::y).component,
            bloch_from_correlators(t, TomographySetting::z).component};
}

}  // namespace etele

#endif  // ETELE_LEVITON_HPP
