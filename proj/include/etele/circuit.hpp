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

// Two-mode scattering elements, their composition into an M x M network, the
// line-oriented circuit text format, and the teleportation network.
//
// A circuit is a set of wires (the declared modes). Elements act in place on
// one or two wires, in file order. Circuit text:
//
//     # comment
//     modes a b c d
//     sym a b
//     prep a b R=0.5 phi=1.5708
//     tomo c d Dp=1 theta=0
//     phase c value=0.25
//
// Probabilities (R, Dp) must lie in [0, 1]; angles are radians.

#ifndef ETELE_CIRCUIT_HPP
#define ETELE_CIRCUIT_HPP

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "etele/fock.hpp"
#include "etele/numeric.hpp"

namespace etele {

enum class ElementKind { prep_splitter, sym_splitter, tomo_splitter, phase_shift };

/// One scattering element. `probability` is R for prep_splitter and D' for
/// tomo_splitter; `angle` is phi, theta or the phase value. The complementary
/// probability is always 1 - probability.
struct ElementSpec {
    ElementKind kind = ElementKind::sym_splitter;
    std::string first;
    std::string second;
    double probability = 0.0;
    double angle = 0.0;

    bool operator==(const ElementSpec &) const = default;
};

namespace detail {
inline void check_probability(double p, const char *name) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}
inline void check_angle(double a, const char *name) {
    if (!std::isfinite(a)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}
inline void check_pair(const std::string &a, const std::string &b) {
    if (a == b) {
        throw std::invalid_argument("two-mode element needs two distinct modes");
    }
}
}  // namespace detail

inline ElementSpec prep_splitter(std::string a, std::string b, double reflection, double phi) {
    detail::check_pair(a, b);
    detail::check_probability(reflection, "R");
    detail::check_angle(phi, "phi");
    return {ElementKind::prep_splitter, std::move(a), std::move(b), reflection, phi};
}
inline ElementSpec sym_splitter(std::string a, std::string b) {
    detail::check_pair(a, b);
    return {ElementKind::sym_splitter, std::move(a), std::move(b), 0.0, 0.0};
}
inline ElementSpec tomo_splitter(std::string a, std::string b, double transmission, double theta) {
    detail::check_pair(a, b);
    detail::check_probability(transmission, "Dp");
    detail::check_angle(theta, "theta");
    return {ElementKind::tomo_splitter, std::move(a), std::move(b), transmission, theta};
}
inline ElementSpec phase_shift(std::string mode, double value) {
    detail::check_angle(value, "value");
    return {ElementKind::phase_shift, std::move(mode), {}, 0.0, value};
}

/// 2x2 scattering matrix (1x1 for phase_shift). Rows are the outputs on
/// (first, second), columns the inputs on (first, second).
///   prep: ( i sqrt(R) e^{-i phi}   sqrt(D) e^{-i phi} ;  sqrt(D)   i sqrt(R) )
///   sym:  (1/sqrt 2) ( i 1 ; 1 i )
///   tomo: ( sqrt(D') e^{-i theta}   -i sqrt(R') ; -i sqrt(R') e^{-i theta}   sqrt(D') )
///   phase: e^{-i value}
inline ComplexMatrix element_matrix(const ElementSpec &e) {
    const Complex i(0.0, 1.0);
    switch (e.kind) {
        case ElementKind::prep_splitter: {
            double r = std::sqrt(e.probability);
            double d = std::sqrt(1.0 - e.probability);
            Complex ph = std::polar(1.0, -e.angle);
            ComplexMatrix m(2, 2);
            m << i * r * ph, d * ph, d, i * r;
            return m;
        }
        case ElementKind::sym_splitter: {
            double s = 1.0 / std::sqrt(2.0);
            ComplexMatrix m(2, 2);
            m << i * s, s, s, i * s;
            return m;
        }
        case ElementKind::tomo_splitter: {
            double d = std::sqrt(e.probability);
            double r = std::sqrt(1.0 - e.probability);
            Complex ph = std::polar(1.0, -e.angle);
            ComplexMatrix m(2, 2);
            m << d * ph, -i * r, -i * r * ph, d;
            return m;
        }
        case ElementKind::phase_shift: {
            ComplexMatrix m(1, 1);
            m << std::polar(1.0, -e.angle);
            return m;
        }
    }
    throw std::logic_error("unhandled element kind");
}

/// Declared wires plus the elements in application order.
struct CircuitDescription {
    ModeRegistry modes;
    std::vector<ElementSpec> elements;

    bool operator==(const CircuitDescription &) const = default;
};

/// Embeds every element into the identity on all wires and multiplies in order.
inline SingleParticleUnitary compose(const CircuitDescription &c) {
    auto m = static_cast<Eigen::Index>(c.modes.size());
    ComplexMatrix total = ComplexMatrix::Identity(m, m);
    for (const auto &e : c.elements) {
        ComplexMatrix local = element_matrix(e);
        std::vector<Eigen::Index> wires{static_cast<Eigen::Index>(c.modes.index(e.first))};
        if (e.kind != ElementKind::phase_shift) {
            wires.push_back(static_cast<Eigen::Index>(c.modes.index(e.second)));
        }
        // Left-multiplying by the embedded element only mixes the touched rows.
        ComplexMatrix rows(static_cast<Eigen::Index>(wires.size()), m);
        for (size_t r = 0; r < wires.size(); ++r) {
            rows.row(static_cast<Eigen::Index>(r)) = total.row(wires[r]);
        }
        ComplexMatrix mixed = local * rows;
        for (size_t r = 0; r < wires.size(); ++r) {
            total.row(wires[r]) = mixed.row(static_cast<Eigen::Index>(r));
        }
    }
    return SingleParticleUnitary(std::move(total), c.modes, c.modes);
}

/// Parse failure with 1-based line and column.
class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, size_t column, const std::string &message)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {
    }
    size_t line() const {
        return line_;
    }
    size_t column() const {
        return column_;
    }

   private:
    size_t line_;
    size_t column_;
};

namespace detail {

struct Token {
    std::string_view text;
    size_t column;
};

inline std::vector<Token> tokenize_line(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
    }
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back({line.substr(start, i - start), start + 1});
        }
    }
    return out;
}

inline bool is_label(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (char ch : s) {
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'' || ch == '+' || ch == '-')) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// Parses circuit text. Throws ParseError with the position of the offending token.
inline CircuitDescription parse_circuit(std::string_view text) {
    std::optional<ModeRegistry> modes;
    std::vector<ElementSpec> elements;
    size_t line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++line_no;
        auto tokens = detail::tokenize_line(line);
        auto fail = [&](size_t col, const std::string &msg) { return ParseError(line_no, col, msg); };

        if (!tokens.empty()) {
            std::string_view keyword = tokens[0].text;
            if (keyword == "modes") {
                if (modes) {
                    throw fail(tokens[0].column, "duplicate 'modes' declaration");
                }
                if (tokens.size() < 2) {
                    throw fail(tokens[0].column + 5, "'modes' needs at least one label");
                }
                std::vector<std::string> labels;
                for (size_t k = 1; k < tokens.size(); ++k) {
                    if (!detail::is_label(tokens[k].text)) {
                        throw fail(tokens[k].column, "invalid mode label '" + std::string(tokens[k].text) + "'");
                    }
                    for (const auto &l : labels) {
                        if (l == tokens[k].text) {
                            throw fail(tokens[k].column, "mode '" + l + "' declared twice");
                        }
                    }
                    labels.emplace_back(tokens[k].text);
                }
                if (labels.size() > kMaxModes) {
                    throw fail(tokens[0].column, "at most 16 modes are supported");
                }
                modes.emplace(std::move(labels));
            } else {
                size_t n_modes;
                std::vector<std::string_view> keys;
                if (keyword == "sym") {
                    n_modes = 2;
                } else if (keyword == "prep") {
                    n_modes = 2;
                    keys = {"R", "phi"};
                } else if (keyword == "tomo") {
                    n_modes = 2;
                    keys = {"Dp", "theta"};
                } else if (keyword == "phase") {
                    n_modes = 1;
                    keys = {"value"};
                } else {
                    throw fail(tokens[0].column, "unknown element kind '" + std::string(keyword) + "'");
                }
                if (!modes) {
                    throw fail(tokens[0].column, "element before 'modes' declaration");
                }
                if (tokens.size() != 1 + n_modes + keys.size()) {
                    size_t col = tokens.size() > 1 + n_modes + keys.size()
                                     ? tokens[1 + n_modes + keys.size()].column
                                     : tokens.back().column + tokens.back().text.size();
                    throw fail(col, "'" + std::string(keyword) + "' expects " + std::to_string(n_modes) +
                                        " mode(s) and " + std::to_string(keys.size()) + " parameter(s)");
                }
                std::vector<std::string> wires;
                for (size_t k = 1; k <= n_modes; ++k) {
                    const auto &tok = tokens[k];
                    if (!detail::is_label(tok.text)) {
                        throw fail(tok.column, "expected a mode label, got '" + std::string(tok.text) + "'");
                    }
                    if (!modes->find(tok.text)) {
                        throw fail(tok.column, "undeclared mode '" + std::string(tok.text) + "'");
                    }
                    wires.emplace_back(tok.text);
                }
                if (n_modes == 2 && wires[0] == wires[1]) {
                    throw fail(tokens[2].column, "element needs two distinct modes");
                }
                std::vector<std::optional<double>> values(keys.size());
                for (size_t k = 1 + n_modes; k < tokens.size(); ++k) {
                    const auto &tok = tokens[k];
                    auto eq = tok.text.find('=');
                    if (eq == std::string_view::npos) {
                        throw fail(tok.column, "expected key=value, got '" + std::string(tok.text) + "'");
                    }
                    std::string_view key = tok.text.substr(0, eq);
                    std::string_view val = tok.text.substr(eq + 1);
                    size_t slot = keys.size();
                    for (size_t q = 0; q < keys.size(); ++q) {
                        if (keys[q] == key) {
                            slot = q;
                        }
                    }
                    if (slot == keys.size()) {
                        throw fail(tok.column, "unknown parameter '" + std::string(key) + "' for '" +
                                                   std::string(keyword) + "'");
                    }
                    if (values[slot]) {
                        throw fail(tok.column, "parameter '" + std::string(key) + "' given twice");
                    }
                    double v;
                    if (!parse_decimal(val, v)) {
                        throw fail(tok.column + eq + 1, "invalid number '" + std::string(val) + "'");
                    }
                    if ((key == "R" || key == "Dp") && (v < 0.0 || v > 1.0)) {
                        throw fail(tok.column + eq + 1,
                                   "parameter " + std::string(key) + "=" + std::string(val) + " out of range [0, 1]");
                    }
                    values[slot] = v;
                }
                if (keyword == "sym") {
                    elements.push_back(sym_splitter(wires[0], wires[1]));
                } else if (keyword == "prep") {
                    elements.push_back(prep_splitter(wires[0], wires[1], *values[0], *values[1]));
                } else if (keyword == "tomo") {
                    elements.push_back(tomo_splitter(wires[0], wires[1], *values[0], *values[1]));
                } else {
                    elements.push_back(phase_shift(wires[0], *values[0]));
                }
            }
        }
        if (nl == std::string_view::npos) {
            break;
        }
        start = nl + 1;
    }
    if (!modes) {
        throw ParseError(line_no, 1, "missing 'modes' declaration");
    }
    return {std::move(*modes), std::move(elements)};
}

/// Canonical text form; parse_circuit(print_circuit(c)) == c.
inline std::string print_circuit(const CircuitDescription &c) {
    std::ostringstream out;
    out << "modes";
    for (const auto &l : c.modes.labels()) {
        out << ' ' << l;
    }
    out << '\n';
    for (const auto &e : c.elements) {
        switch (e.kind) {
            case ElementKind::sym_splitter:
                out << "sym " << e.first << ' ' << e.second;
                break;
            case ElementKind::prep_splitter:
                out << "prep " << e.first << ' ' << e.second << " R=" << format_double(e.probability)
                    << " phi=" << format_double(e.angle);
                break;
            case ElementKind::tomo_splitter:
                out << "tomo " << e.first << ' ' << e.second << " Dp=" << format_double(e.probability)
                    << " theta=" << format_double(e.angle);
                break;
            case ElementKind::phase_shift:
                out << "phase " << e.first << " value=" << format_double(e.angle);
                break;
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Teleportation network.
//
// Wires are named after the input that feeds them:
//   S0phi, G0phi, S1phi, G1phi  entanglement sources and grounded partners
//   Spsi,  Gpsi                 input-qubit source and its grounded partner
// After the source splitters the wires carry A0, B'0, A1, B'1, A'0, A'1;
// after Alice's splitters A0+, B'0, A1+, B'1, A0-, A1-; Bob's tomography
// splitter turns B'0, B'1 into B0, B1.

inline const ModeRegistry &teleport_input_modes() {
    static const ModeRegistry r{"S0phi", "G0phi", "S1phi", "G1phi", "Spsi", "Gpsi"};
    return r;
}
inline const ModeRegistry &teleport_output_modes() {
    static const ModeRegistry r{"A0p", "A0m", "A1p", "A1m", "B0", "B1"};
    return r;
}
/// Outputs before Bob's tomography splitter.
inline const ModeRegistry &teleport_premeasurement_modes() {
    static const ModeRegistry r{"A0p", "A0m", "A1p", "A1m", "Bp0", "Bp1"};
    return r;
}
/// Modes right after the source splitters (primed A modes carry the input qubit).
inline const ModeRegistry &teleport_source_modes() {
    static const ModeRegistry r{"Ap0", "Ap1", "A0", "A1", "Bp0", "Bp1"};
    return r;
}

enum class NetworkStage { sources, before_tomography, full };

/// Dephasing phases, one per arm, in the order A'0, A'1, A0, A1, B'0, B'1.
using ArmPhases = std::array<double, 6>;

/// Settings of the four tunable elements of the network.
struct NetworkSettings {
    double reflection = 0.5;    // R of the input-qubit splitter
    double phi = 0.0;           // preparation phase
    double transmission = 1.0;  // D' of Bob's tomography splitter
    double theta = 0.0;         // tomography phase
};

/// The teleportation network as a circuit on the six input-named wires.
/// Phase shifters for `arm_phases` sit between the source splitters and
/// Alice's splitters.
inline CircuitDescription teleport_description(const NetworkSettings &s,
                                               NetworkStage stage = NetworkStage::full,
                                               const std::optional<ArmPhases> &arm_phases = std::nullopt) {
    CircuitDescription c{teleport_input_modes(), {}};
    c.elements.push_back(prep_splitter("Spsi", "Gpsi", s.reflection, s.phi));
    c.elements.push_back(sym_splitter("S0phi", "G0phi"));
    c.elements.push_back(sym_splitter("S1phi", "G1phi"));
    if (arm_phases) {
        static constexpr std::array<const char *, 6> arm_wire{"Spsi", "Gpsi", "S0phi", "S1phi", "G0phi", "G1phi"};
        for (size_t k = 0; k < arm_wire.size(); ++k) {
            c.elements.push_back(phase_shift(arm_wire[k], (*arm_phases)[k]));
        }
    }
    if (stage == NetworkStage::sources) {
        return c;
    }
    c.elements.push_back(sym_splitter("S0phi", "Spsi"));
    c.elements.push_back(sym_splitter("S1phi", "Gpsi"));
    if (stage == NetworkStage::before_tomography) {
        return c;
    }
    c.elements.push_back(tomo_splitter("G0phi", "G1phi", s.transmission, s.theta));
    return c;
}

/// Composed network with outputs labeled by their physical mode names.
inline SingleParticleUnitary teleport_network(const NetworkSettings &s,
                                              NetworkStage stage = NetworkStage::full,
                                              const std::optional<ArmPhases> &arm_phases = std::nullopt) {
    auto wired = compose(teleport_description(s, stage, arm_phases));
    switch (stage) {
        case NetworkStage::sources: {
            static constexpr std::array<size_t, 6> src{4, 5, 0, 2, 1, 3};
            return wired.permute_rows(teleport_source_modes(), src);
        }
        case NetworkStage::before_tomography: {
            static constexpr std::array<size_t, 6> src{0, 4, 2, 5, 1, 3};
            return wired.permute_rows(teleport_premeasurement_modes(), src);
        }
        case NetworkStage::full: {
            static constexpr std::array<size_t, 6> src{0, 4, 2, 5, 1, 3};
            return wired.permute_rows(teleport_output_modes(), src);
        }
    }
    throw std::logic_error("unhandled network stage");
}

/// Full 6x6 scattering matrix from the six inputs to the six detectors.
inline SingleParticleUnitary builtin_teleport_network(double reflection, double phi, double transmission,
                                                      double theta) {
    return teleport_network({reflection, phi, transmission, theta}, NetworkStage::full);
}

}  // namespace etele

#endif  // ETELE_CIRCUIT_HPP
