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

// Sparse fermionic Fock-space states with a fixed particle number over a small
// set of labeled modes, and the second-quantized action of single-particle
// unitaries on them.
//
// Conventions:
//   - bit i of an OccupationConfig is the occupation of registry index i;
//   - a configuration's basis vector is a^dag_{i1} a^dag_{i2} ... |vac> with
//     i1 < i2 < ... (ascending creation order has sign +1);
//   - a unitary maps input annihilators to output annihilators,
//     b_out = sum_in U(out, in) a_in, so an N-particle amplitude transforms
//     with the N x N minors det U[out_occupied, in_occupied].

#ifndef ETELE_FOCK_HPP
#define ETELE_FOCK_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace etele {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr size_t kMaxModes = 16;
inline constexpr int kMaxParticles = 8;
inline constexpr double kPruneThreshold = 1e-14;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-12;

/// Ordered, duplicate-free list of mode labels.
class ModeRegistry {
   public:
    ModeRegistry() = default;
    ModeRegistry(std::initializer_list<std::string> labels) : ModeRegistry(std::vector<std::string>(labels)) {
    }
    explicit ModeRegistry(std::vector<std::string> labels) : labels_(std::move(labels)) {
        if (labels_.size() > kMaxModes) {
            throw std::invalid_argument("mode registry holds at most 16 modes");
        }
        for (size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty()) {
                throw std::invalid_argument("empty mode label");
            }
            for (size_t j = 0; j < i; ++j) {
                if (labels_[i] == labels_[j]) {
                    throw std::invalid_argument("duplicate mode label '" + labels_[i] + "'");
                }
            }
        }
    }

    size_t size() const {
        return labels_.size();
    }
    const std::string &label(size_t i) const {
        return labels_.at(i);
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }
    std::optional<size_t> find(std::string_view label) const {
        for (size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i] == label) {
                return i;
            }
        }
        return std::nullopt;
    }
    size_t index(std::string_view label) const {
        if (auto i = find(label)) {
            return *i;
        }
        throw std::invalid_argument("unknown mode '" + std::string(label) + "'");
    }

    bool operator==(const ModeRegistry &) const = default;

   private:
    std::vector<std::string> labels_;
};

/// Occupation pattern of up to 16 modes; bit i is mode i.
struct OccupationConfig {
    std::uint32_t bits = 0;

    bool occupied(size_t mode) const {
        return (bits >> mode) & 1u;
    }
    int particle_count() const {
        return std::popcount(bits);
    }
    /// Occupied mode indices in ascending order.
    std::vector<size_t> modes() const {
        std::vector<size_t> out;
        for (std::uint32_t b = bits; b != 0; b &= b - 1) {
            out.push_back(static_cast<size_t>(std::countr_zero(b)));
        }
        return out;
    }
    static OccupationConfig from_modes(std::span<const size_t> modes) {
        OccupationConfig c;
        for (size_t m : modes) {
            c.bits |= 1u << m;
        }
        return c;
    }

    auto operator<=>(const OccupationConfig &) const = default;
};

/// All configurations of `particles` particles in `modes` modes, ascending by bit value.
inline std::vector<OccupationConfig> enumerate_configs(size_t modes, int particles) {
    std::vector<OccupationConfig> out;
    if (particles < 0 || static_cast<size_t>(particles) > modes) {
        return out;
    }
    std::uint32_t limit = 1u << modes;
    for (std::uint32_t b = 0; b < limit; ++b) {
        if (std::popcount(b) == particles) {
            out.push_back(OccupationConfig{b});
        }
    }
    return out;
}

/// Determinant by LU with partial pivoting on an n x n block (n <= 8) given as
/// a row-major copy. Returns an exact 1 or 0 for permutation-free identity
/// blocks and blocks with a zero column.
inline Complex small_determinant(std::array<Complex, kMaxParticles * kMaxParticles> a, size_t n) {
    Complex det = 1.0;
    for (size_t k = 0; k < n; ++k) {
        size_t pivot = k;
        double best = std::abs(a[k * n + k]);
        for (size_t r = k + 1; r < n; ++r) {
            double v = std::abs(a[r * n + k]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) {
            return 0.0;
        }
        if (pivot != k) {
            for (size_t c = 0; c < n; ++c) {
                std::swap(a[k * n + c], a[pivot * n + c]);
            }
            det = -det;
        }
        Complex p = a[k * n + k];
        det *= p;
        for (size_t r = k + 1; r < n; ++r) {
            Complex f = a[r * n + k] / p;
            if (f == Complex(0.0)) {
                continue;
            }
            for (size_t c = k + 1; c < n; ++c) {
                a[r * n + c] -= f * a[k * n + c];
            }
        }
    }
    return det;
}

/// Max-abs entry of U^dag U - I; infinity for non-square input.
inline double unitarity_deviation(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    ComplexMatrix g = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
    return u.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff();
}

/// An M x M unitary with output (row) and input (column) mode labels.
class SingleParticleUnitary {
   public:
    SingleParticleUnitary(ComplexMatrix matrix, ModeRegistry rows, ModeRegistry cols)
        : matrix_(std::move(matrix)), rows_(std::move(rows)), cols_(std::move(cols)) {
        if (matrix_.rows() != static_cast<Eigen::Index>(rows_.size()) ||
            matrix_.cols() != static_cast<Eigen::Index>(cols_.size())) {
            throw std::invalid_argument("unitary dimensions do not match its mode registries");
        }
        double dev = unitarity_deviation(matrix_);
        if (!(dev <= kUnitaryTolerance)) {
            throw std::invalid_argument("matrix is not unitary (deviation " + std::to_string(dev) + ")");
        }
    }

    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    const ModeRegistry &rows() const {
        return rows_;
    }
    const ModeRegistry &cols() const {
        return cols_;
    }
    size_t size() const {
        return rows_.size();
    }
    Complex at(std::string_view row, std::string_view col) const {
        return matrix_(static_cast<Eigen::Index>(rows_.index(row)), static_cast<Eigen::Index>(cols_.index(col)));
    }

    /// Row i of the result is row `row_source[i]` of this unitary, relabeled by `new_rows`.
    SingleParticleUnitary permute_rows(ModeRegistry new_rows, std::span<const size_t> row_source) const {
        if (row_source.size() != size() || new_rows.size() != size()) {
            throw std::invalid_argument("row permutation has the wrong length");
        }
        std::vector<bool> seen(size(), false);
        ComplexMatrix m(matrix_.rows(), matrix_.cols());
        for (size_t i = 0; i < row_source.size(); ++i) {
            if (row_source[i] >= size() || seen[row_source[i]]) {
                throw std::invalid_argument("row permutation is not a permutation");
            }
            seen[row_source[i]] = true;
            m.row(static_cast<Eigen::Index>(i)) = matrix_.row(static_cast<Eigen::Index>(row_source[i]));
        }
        return SingleParticleUnitary(std::move(m), std::move(new_rows), cols_);
    }

    /// Same matrix, columns relabeled (used to rename wires).
    SingleParticleUnitary relabel_cols(ModeRegistry new_cols) const {
        return SingleParticleUnitary(matrix_, rows_, std::move(new_cols));
    }

   private:
    ComplexMatrix matrix_;
    ModeRegistry rows_;
    ModeRegistry cols_;
};

/// `second` applied after `first`; requires second.cols() == first.rows().
inline SingleParticleUnitary then(const SingleParticleUnitary &first, const SingleParticleUnitary &second) {
    if (!(second.cols() == first.rows())) {
        throw std::invalid_argument("cannot chain unitaries: registries differ");
    }
    return SingleParticleUnitary(second.matrix() * first.matrix(), second.rows(), first.cols());
}

/// One product term coefficient * a^dag_{ops[0]} a^dag_{ops[1]} ... |vac>,
/// operators written left to right.
struct CreationTerm {
    Complex coefficient;
    std::vector<std::string> ops;
};

/// Normalized fixed-particle-number state with sparse amplitudes.
class FockState {
   public:
    using AmplitudeMap = std::map<OccupationConfig, Complex>;

    /// Builds a state from raw amplitudes; validates population and norm.
    FockState(ModeRegistry registry, int particles, AmplitudeMap amplitudes)
        : registry_(std::move(registry)), particles_(particles), amplitudes_(std::move(amplitudes)) {
        if (particles_ < 0 || particles_ > kMaxParticles || static_cast<size_t>(particles_) > registry_.size()) {
            throw std::invalid_argument("particle number out of range");
        }
        std::uint32_t limit = registry_.size() >= 32 ? ~0u : (1u << registry_.size());
        for (auto it = amplitudes_.begin(); it != amplitudes_.end();) {
            if (it->first.bits >= limit || it->first.particle_count() != particles_) {
                throw std::invalid_argument("configuration does not match particle number or mode count");
            }
            if (std::abs(it->second) < kPruneThreshold) {
                it = amplitudes_.erase(it);
            } else {
                ++it;
            }
        }
        double n = norm_squared();
        if (std::abs(n - 1.0) > kNormTolerance) {
            throw std::invalid_argument("state is not normalized (|psi|^2 = " + std::to_string(n) + ")");
        }
    }

    /// Sum of coefficient * product-of-creation-operators terms. Terms that
    /// create the same mode twice vanish; the remaining terms must all carry the
    /// same particle number and the sum must be normalized.
    static FockState from_creation_terms(const ModeRegistry &registry, std::span<const CreationTerm> terms) {
        AmplitudeMap amps;
        std::optional<int> particles;
        for (const auto &term : terms) {
            std::vector<size_t> idx;
            idx.reserve(term.ops.size());
            for (const auto &label : term.ops) {
                idx.push_back(registry.index(label));
            }
            int n = static_cast<int>(idx.size());
            if (particles && *particles != n) {
                throw std::invalid_argument("creation terms carry different particle numbers");
            }
            particles = n;
            // Sign of the permutation that sorts the operators into ascending order.
            double sign = 1.0;
            for (size_t i = 0; i < idx.size(); ++i) {
                for (size_t j = i + 1; j < idx.size(); ++j) {
                    if (idx[i] > idx[j]) {
                        sign = -sign;
                    }
                }
            }
            std::sort(idx.begin(), idx.end());
            if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
                continue;
            }
            amps[OccupationConfig::from_modes(idx)] += sign * term.coefficient;
        }
        return FockState(registry, particles.value_or(0), std::move(amps));
    }

    const ModeRegistry &registry() const {
        return registry_;
    }
    int particle_number() const {
        return particles_;
    }
    const AmplitudeMap &amplitudes() const {
        return amplitudes_;
    }
    Complex amplitude(OccupationConfig c) const {
        auto it = amplitudes_.find(c);
        return it == amplitudes_.end() ? Complex(0.0) : it->second;
    }
    double norm_squared() const {
        double s = 0.0;
        for (const auto &[c, a] : amplitudes_) {
            s += std::norm(a);
        }
        return s;
    }

   private:
    ModeRegistry registry_;
    int particles_;
    AmplitudeMap amplitudes_;
};

/// Outcome of a projective measurement. `state` is empty iff probability is 0.
struct Projection {
    double probability = 0.0;
    std::optional<FockState> state;
};

/// Single configuration with the listed modes occupied, amplitude +1.
inline FockState create_sources(const ModeRegistry &registry, std::span<const std::string> occupied_labels) {
    std::vector<size_t> idx;
    for (const auto &label : occupied_labels) {
        size_t i = registry.index(label);
        if (std::find(idx.begin(), idx.end(), i) != idx.end()) {
            throw std::invalid_argument("mode '" + label + "' occupied twice (Pauli exclusion)");
        }
        idx.push_back(i);
    }
    if (idx.size() > static_cast<size_t>(kMaxParticles)) {
        throw std::invalid_argument("too many particles");
    }
    return FockState(registry, static_cast<int>(idx.size()), {{OccupationConfig::from_modes(idx), Complex(1.0)}});
}

inline FockState create_sources(const ModeRegistry &registry, std::initializer_list<std::string> occupied_labels) {
    std::vector<std::string> v(occupied_labels);
    return create_sources(registry, std::span<const std::string>(v));
}

/// Second-quantized action of U on s. The output lives on U.rows().
inline FockState lift_apply(const SingleParticleUnitary &u, const FockState &s) {
    if (!(u.cols() == s.registry())) {
        throw std::invalid_argument("unitary input modes do not match the state's registry");
    }
    const int n = s.particle_number();
    const auto &m = u.matrix();
    FockState::AmplitudeMap out;
    std::vector<std::pair<std::vector<size_t>, Complex>> inputs;
    inputs.reserve(s.amplitudes().size());
    for (const auto &[cfg, amp] : s.amplitudes()) {
        inputs.emplace_back(cfg.modes(), amp);
    }
    for (OccupationConfig oc : enumerate_configs(u.rows().size(), n)) {
        auto out_modes = oc.modes();
        Complex total = 0.0;
        for (const auto &[in_modes, amp] : inputs) {
            std::array<Complex, kMaxParticles * kMaxParticles> block{};
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    block[static_cast<size_t>(r * n + c)] = m(static_cast<Eigen::Index>(out_modes[static_cast<size_t>(r)]),
                                                              static_cast<Eigen::Index>(in_modes[static_cast<size_t>(c)]));
                }
            }
            total += small_determinant(block, static_cast<size_t>(n)) * amp;
        }
        if (std::abs(total) >= kPruneThreshold) {
            out.emplace(oc, total);
        }
    }
    return FockState(u.rows(), n, std::move(out));
}

/// Keeps configurations accepted by `keep`; probability is the retained weight.
inline Projection project_onto(const FockState &s, const std::function<bool(OccupationConfig)> &keep) {
    FockState::AmplitudeMap kept;
    double p = 0.0;
    for (const auto &[c, a] : s.amplitudes()) {
        if (keep(c)) {
            kept.emplace(c, a);
            p += std::norm(a);
        }
    }
    Projection result;
    result.probability = p;
    if (kept.empty() || p == 0.0) {
        result.probability = 0.0;
        return result;
    }
    double scale = 1.0 / std::sqrt(p);
    for (auto &[c, a] : kept) {
        a *= scale;
    }
    result.state.emplace(s.registry(), s.particle_number(), std::move(kept));
    return result;
}

/// Projects mode `label` onto occupation n in {0, 1}.
inline Projection project_number(const FockState &s, std::string_view label, int n) {
    if (n != 0 && n != 1) {
        throw std::invalid_argument("occupation must be 0 or 1");
    }
    size_t mode = s.registry().index(label);
    return project_onto(s, [mode, n](OccupationConfig c) { return static_cast<int>(c.occupied(mode)) == n; });
}

/// <bra|ket>; both states must share a registry.
inline Complex overlap(const FockState &bra, const FockState &ket) {
    if (!(bra.registry() == ket.registry())) {
        throw std::invalid_argument("overlap of states on different registries");
    }
    if (bra.particle_number() != ket.particle_number()) {
        return 0.0;
    }
    Complex s = 0.0;
    for (const auto &[c, a] : ket.amplitudes()) {
        s += std::conj(bra.amplitude(c)) * a;
    }
    return s;
}

/// Expectation of an operator diagonal in the occupation basis.
inline double expectation_diagonal(const FockState &s, const std::function<double(OccupationConfig)> &weight) {
    double e = 0.0;
    for (const auto &[c, a] : s.amplitudes()) {
        e += std::norm(a) * weight(c);
    }
    return e;
}

/// Mean (one label), second central moment (two labels) or third central
/// moment (three labels) of the occupation numbers under |amplitude|^2.
inline double occupation_moments(const FockState &s, std::span<const std::string> labels) {
    if (labels.empty() || labels.size() > 3) {
        throw std::invalid_argument("occupation_moments takes 1 to 3 mode labels");
    }
    std::vector<size_t> modes;
    for (const auto &l : labels) {
        size_t m = s.registry().index(l);
        if (std::find(modes.begin(), modes.end(), m) != modes.end()) {
            throw std::invalid_argument("repeated mode label '" + l + "' in occupation_moments");
        }
        modes.push_back(m);
    }
    std::vector<double> mean(modes.size());
    for (size_t k = 0; k < modes.size(); ++k) {
        mean[k] = expectation_diagonal(s, [m = modes[k]](OccupationConfig c) { return c.occupied(m) ? 1.0 : 0.0; });
    }
    if (modes.size() == 1) {
        return mean[0];
    }
    return expectation_diagonal(s, [&](OccupationConfig c) {
        double prod = 1.0;
        for (size_t k = 0; k < modes.size(); ++k) {
            prod *= (c.occupied(modes[k]) ? 1.0 : 0.0) - mean[k];
        }
        return prod;
    });
}

inline double occupation_moments(const FockState &s, std::initializer_list<std::string> labels) {
    std::vector<std::string> v(labels);
    return occupation_moments(s, std::span<const std::string>(v));
}

}  // namespace etele

#endif  // ETELE_FOCK_HPP
