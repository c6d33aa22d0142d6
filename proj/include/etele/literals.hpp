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

// Hand-written closed forms of the teleportation network, kept apart from the
// composed circuit so the two can be checked against each other.

#ifndef ETELE_LITERALS_HPP
#define ETELE_LITERALS_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "etele/circuit.hpp"
#include "etele/fock.hpp"

namespace etele::literal {

/// Scattering matrix from (S0phi, G0phi, S1phi, G1phi, Spsi, Gpsi) to
/// (A0+, A0-, A1+, A1-, B0, B1), written out entry by entry.
inline ComplexMatrix teleport_matrix(double reflection, double phi, double transmission, double theta) {
    const Complex i(0.0, 1.0);
    double r = reflection;
    double d = 1.0 - reflection;
    double dp = transmission;
    double rp = 1.0 - transmission;
    Complex e = std::polar(1.0, -phi);
    Complex t = std::polar(1.0, -theta);
    double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(6, 6);
    // clang-format off
    m << -s,                 i * s,              0.0,                 0.0,                 i * std::sqrt(r) * e, std::sqrt(d) * e,
         i * s,              s,                  0.0,                 0.0,                 -std::sqrt(r) * e,    i * std::sqrt(d) * e,
         0.0,                0.0,                -s,                  i * s,               std::sqrt(d),         i * std::sqrt(r),
         0.0,                0.0,                i * s,               s,                   i * std::sqrt(d),     -std::sqrt(r),
         std::sqrt(dp) * t,  i * std::sqrt(dp) * t, -i * std::sqrt(rp), std::sqrt(rp),     0.0,                  0.0,
         -i * std::sqrt(rp) * t, std::sqrt(rp) * t, std::sqrt(dp),     i * std::sqrt(dp),   0.0,                  0.0;
    // clang-format on
    return m / std::sqrt(2.0);
}

/// The part of the premeasurement state that carries the teleported qubit,
/// on (A0p, A0m, A1p, A1m, Bp0, Bp1).
inline FockState t_state(double reflection, double phi) {
    const Complex i(0.0, 1.0);
    Complex a = i * std::sqrt(reflection) * std::polar(1.0, -phi);
    double b = std::sqrt(1.0 - reflection);
    std::vector<CreationTerm> terms{
        {0.5 * a, {"A0p", "A1p", "Bp0"}},       {0.5 * b, {"A0p", "A1p", "Bp1"}},
        {0.5 * a, {"A0m", "A1m", "Bp0"}},       {0.5 * b, {"A0m", "A1m", "Bp1"}},
        {-0.5 * i * a, {"A0p", "A1m", "Bp0"}},  {0.5 * i * b, {"A0p", "A1m", "Bp1"}},
        {0.5 * i * a, {"A0m", "A1p", "Bp0"}},   {-0.5 * i * b, {"A0m", "A1p", "Bp1"}},
    };
    return FockState::from_creation_terms(teleport_premeasurement_modes(), terms);
}

/// The remainder, orthogonal to t_state, on the same modes.
inline FockState r_state(double reflection, double phi) {
    const Complex i(0.0, 1.0);
    Complex e = std::polar(1.0, -phi);
    Complex a = i * std::sqrt(reflection) * e;
    double b = std::sqrt(1.0 - reflection);
    double s = 1.0 / std::sqrt(2.0);
    double n = 1.0 / std::sqrt(3.0);
    std::vector<CreationTerm> terms{
        {-n * a * s * i, {"A0p", "A0m", "A1p"}},
        {-n * a * s, {"A0p", "A0m", "A1m"}},
        {n * b * s * i, {"A0p", "A1p", "A1m"}},
        {n * b * s, {"A0m", "A1p", "A1m"}},
        {n * s * a, {"A0p", "Bp0", "Bp1"}},
        {n * s * a * i, {"A0m", "Bp0", "Bp1"}},
        {n * s * b, {"A1p", "Bp0", "Bp1"}},
        {n * s * b * i, {"A1m", "Bp0", "Bp1"}},
        {-n * std::sqrt(reflection) * e, {"A0p", "A0m", "Bp1"}},
        {-n * i * std::sqrt(1.0 - reflection), {"A1p", "A1m", "Bp0"}},
    };
    return FockState::from_creation_terms(teleport_premeasurement_modes(), terms);
}

}  // namespace etele::literal

#endif  // ETELE_LITERALS_HPP
