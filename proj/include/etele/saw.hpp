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

// Gaussian phase noise on the six arms of the surface-acoustic-wave
// implementation, and the resulting teleportation fidelity.

#ifndef ETELE_SAW_HPP
#define ETELE_SAW_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "etele/numeric.hpp"
#include "etele/protocol.hpp"

namespace etele {

/// Per-arm phase variances, arms ordered (A'0, A'1, A0, A1, B'0, B'1).
struct DephasingParams {
    std::array<double, 6> variances{0, 0, 0, 0, 0, 0};

    static DephasingParams uniform(double total) {
        DephasingParams d;
        d.variances.fill(total / 6.0);
        return d;
    }

    void validate() const {
        for (double v : variances) {
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("arm phase variances must be finite and non-negative");
            }
        }
    }
    double total() const {
        double s = 0.0;
        for (double v : variances) {
            s += v;
        }
        return s;
    }
};

/// Bob's ++ state after averaging over Gaussian arm phases of total variance sigma2.
inline QubitState dephased_state_analytic(const TeleportParams &p, double sigma2) {
    p.validate();
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
        throw std::invalid_argument("sigma2 must be finite and non-negative");
    }
    double r = p.reflection;
    double d = p.transmission();
    Complex off = Complex(0.0, 1.0) * std::sqrt(r * d) * std::polar(1.0, -p.phi) * std::exp(-sigma2 / 2.0);
    Eigen::Matrix2cd m;
    m << r, off, std::conj(off), d;
    return QubitState(m);
}

struct MonteCarloState {
    QubitState mean;
    /// Standard errors of the real and imaginary parts of each entry.
    Eigen::Matrix2d standard_error_real;
    Eigen::Matrix2d standard_error_imag;
    /// Range of p(+,+) seen over the samples.
    double min_probability;
    double max_probability;
    size_t samples;
};

/// Averages Bob's ++ conditional state over n_samples independent draws of
/// the six arm phases. Sample i uses a generator seeded with
/// derive_seed(seed, i), so the result does not depend on `threads`.
inline MonteCarloState dephased_state_montecarlo(const TeleportParams &p, const DephasingParams &params,
                                                 size_t n_samples, std::uint64_t seed, unsigned threads = 0) {
    p.validate();
    params.validate();
    if (n_samples == 0) {
        throw std::invalid_argument("n_samples must be at least 1");
    }
    const auto pp = MeasurementOutcome::from_signs('+', '+');
    std::array<std::vector<double>, 8> parts;
    for (auto &v : parts) {
        v.resize(n_samples);
    }
    std::vector<double> probs(n_samples);

    parallel_for_index(
        n_samples,
        [&](size_t i) {
            std::mt19937_64 rng(derive_seed(seed, i));
            std::normal_distribution<double> normal(0.0, 1.0);
            ArmPhases phases{};
            for (size_t a = 0; a < 6; ++a) {
                phases[a] = std::sqrt(params.variances[a]) * normal(rng);
            }
            double prob = 0.0;
            auto cond = bob_conditional(p, pp, phases, &prob);
            const auto &m = std::get<QubitState>(cond).matrix();
            for (size_t k = 0; k < 4; ++k) {
                Complex z = m(static_cast<Eigen::Index>(k / 2), static_cast<Eigen::Index>(k % 2));
                parts[2 * k][i] = z.real();
                parts[2 * k + 1][i] = z.imag();
            }
            probs[i] = prob;
        },
        threads);

    Eigen::Matrix2cd mean;
    Eigen::Matrix2d se_re, se_im;
    for (size_t k = 0; k < 4; ++k) {
        auto re = summarize(parts[2 * k]);
        auto im = summarize(parts[2 * k + 1]);
        auto r = static_cast<Eigen::Index>(k / 2), c = static_cast<Eigen::Index>(k % 2);
        mean(r, c) = Complex(re.mean, im.mean);
        se_re(r, c) = re.standard_error;
        se_im(r, c) = im.standard_error;
    }
    // Averaging can leave rounding-level asymmetry; restore exact Hermiticity.
    mean = (mean + mean.adjoint().eval()) / 2.0;
    auto [lo, hi] = std::minmax_element(probs.begin(), probs.end());
    return {QubitState(mean), se_re, se_im, *lo, *hi, n_samples};
}

/// Fidelity between two qubit states given by Bloch vectors of norm at most 1.
inline double jozsa_fidelity(const BlochVector &r, const BlochVector &s) {
    double nr = r.dot(r);
    double ns = s.dot(s);
    if (nr > 1.0 + 1e-10 || ns > 1.0 + 1e-10) {
        throw std::invalid_argument("Bloch vector norm exceeds 1");
    }
    // Rounding-level mixedness of a pure state counts as zero.
    auto mixedness = [](double n) { return n > 1.0 - 1e-14 ? 0.0 : 1.0 - n; };
    double mixed = std::sqrt(mixedness(nr) * mixedness(ns));
    return std::clamp(0.5 * (1.0 + r.dot(s) + mixed), 0.0, 1.0);
}

/// Fidelity of the dephased teleported state with the pure input (R, phi).
inline double per_state_fidelity(double reflection, double sigma2) {
    double d = 1.0 - reflection;
    return 0.5 * (1.0 + 4.0 * std::exp(-sigma2 / 2.0) * reflection * d + (reflection - d) * (reflection - d));
}

/// Fidelity averaged over pure inputs uniform on the Bloch sphere.
inline double average_fidelity(double sigma2) {
    if (!(sigma2 >= 0.0)) {
        throw std::invalid_argument("sigma2 must be non-negative");
    }
    return (2.0 + std::exp(-sigma2 / 2.0)) / 3.0;
}

/// Sampled sphere average of jozsa_fidelity(input, dephased output).
inline SampleSummary average_fidelity_sampled(double sigma2, size_t n_states, std::uint64_t seed,
                                              unsigned threads = 0) {
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
        throw std::invalid_argument("sigma2 must be finite and non-negative");
    }
    if (n_states == 0) {
        throw std::invalid_argument("n_states must be at least 1");
    }
    std::vector<double> f(n_states);
    parallel_for_index(
        n_states,
        [&](size_t i) {
            std::mt19937_64 rng(derive_seed(seed, i));
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            double z = 2.0 * uni(rng) - 1.0;
            double phi = 2.0 * kPi * uni(rng);
            TeleportParams p{(1.0 + z) / 2.0, phi, TomographySetting::z};
            BlochVector in = input_bloch_vector(p.reflection, p.phi);
            f[i] = jozsa_fidelity(in, dephased_state_analytic(p, sigma2).bloch());
        },
        threads);
    return summarize(f);
}

}  // namespace etele

#endif  // ETELE_SAW_HPP
