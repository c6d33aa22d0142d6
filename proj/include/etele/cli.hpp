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

// Command-line front end. Each command builds a Report (parameter echo,
// tables with unit-annotated columns, notes) that is rendered as text, CSV or
// JSON. Exit codes: 0 success, 1 acceptance failure, 2 usage or I/O error.

#ifndef ETELE_CLI_HPP
#define ETELE_CLI_HPP

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "etele/acceptance.hpp"
#include "etele/circuit.hpp"
#include "etele/leviton.hpp"
#include "etele/protocol.hpp"
#include "etele/saw.hpp"

namespace etele::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAcceptanceFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kFallbackSeed = 20260101;
inline constexpr const char *kSeedEnvironmentVariable = "ETELE_SEED";

/// Seed from ETELE_SEED, or kFallbackSeed when unset.
inline std::uint64_t default_seed() {
    const char *env = std::getenv(kSeedEnvironmentVariable);
    if (env == nullptr || *env == '\0') {
        return kFallbackSeed;
    }
    std::string_view text(env);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string(kSeedEnvironmentVariable) + " is not a decimal integer: '" +
                                    std::string(text) + "'");
    }
    return value;
}

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Column {
    std::string name;
    std::string unit;  // empty for dimensionless or labels

    std::string header() const {
        return unit.empty() ? name : name + " [" + unit + "]";
    }
};

struct Table {
    std::string name;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    bool key_value = false;  // (quantity, value, unit) rows, shown as "quantity = value" in text

    void add(std::vector<Cell> row) {
        if (row.size() != columns.size()) {
            throw std::logic_error("row width does not match table '" + name + "'");
        }
        rows.push_back(std::move(row));
    }
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, Cell>> parameters;
    std::vector<Table> tables;
    std::vector<std::string> notes;
};

enum class Format { text, csv, json };

struct RunConfig {
    std::optional<Format> format;
    std::string out_path;
    std::uint64_t seed = kFallbackSeed;
    unsigned threads = 0;
};

// ---------------------------------------------------------------------------
// Rendering.

inline std::string cell_text(const Cell &c) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return v;
            }
        },
        c);
}

/// Human-readable form: 12 significant digits, no negative zero.
inline std::string cell_display(const Cell &c) {
    if (const auto *d = std::get_if<double>(&c)) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12g", *d == 0.0 ? 0.0 : *d);
        return buf;
    }
    return cell_text(c);
}

inline std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch;
        if (ch == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

/// Tables in order, each preceded by a "# name" line and separated by a blank line.
inline std::string render_csv(const Report &r) {
    std::ostringstream out;
    for (size_t t = 0; t < r.tables.size(); ++t) {
        const Table &table = r.tables[t];
        if (t > 0) {
            out << '\n';
        }
        out << "# " << table.name << '\n';
        for (size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << csv_escape(table.columns[c].header());
        }
        out << '\n';
        for (const auto &row : table.rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << csv_escape(cell_text(row[c]));
            }
            out << '\n';
        }
    }
    return out.str();
}

inline nlohmann::ordered_json cell_json(const Cell &c) {
    return std::visit([](const auto &v) { return nlohmann::ordered_json(v); }, c);
}

inline std::string render_json(const Report &r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["parameters"] = nlohmann::ordered_json::object();
    for (const auto &[k, v] : r.parameters) {
        j["parameters"][k] = cell_json(v);
    }
    j["tables"] = nlohmann::ordered_json::array();
    for (const auto &t : r.tables) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["columns"] = nlohmann::ordered_json::array();
        for (const auto &c : t.columns) {
            jt["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
        }
        jt["rows"] = nlohmann::ordered_json::array();
        for (const auto &row : t.rows) {
            auto jr = nlohmann::ordered_json::array();
            for (const auto &cell : row) {
                jr.push_back(cell_json(cell));
            }
            jt["rows"].push_back(std::move(jr));
        }
        j["tables"].push_back(std::move(jt));
    }
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

inline std::string render_text(const Report &r) {
    std::ostringstream out;
    out << r.command;
    for (const auto &[k, v] : r.parameters) {
        out << ' ' << k << '=' << cell_text(v);
    }
    out << '\n';
    for (const auto &t : r.tables) {
        out << '\n' << t.name << '\n';
        if (t.key_value) {
            for (const auto &row : t.rows) {
                std::string unit = cell_text(row[2]);
                out << "  " << cell_text(row[0]) << " = " << cell_display(row[1]) << (unit.empty() ? "" : " " + unit)
                    << '\n';
            }
            continue;
        }
        std::vector<size_t> width(t.columns.size());
        for (size_t c = 0; c < t.columns.size(); ++c) {
            width[c] = t.columns[c].header().size();
            for (const auto &row : t.rows) {
                width[c] = std::max(width[c], cell_display(row[c]).size());
            }
        }
        for (size_t c = 0; c < t.columns.size(); ++c) {
            out << "  " << std::left << std::setw(static_cast<int>(width[c])) << t.columns[c].header();
        }
        out << '\n';
        for (const auto &row : t.rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                out << "  " << std::left << std::setw(static_cast<int>(width[c])) << cell_display(row[c]);
            }
            out << '\n';
        }
    }
    if (!r.notes.empty()) {
        out << '\n';
        for (const auto &n : r.notes) {
            out << n << '\n';
        }
    }
    return out.str();
}

inline std::string render(const Report &r, Format f) {
    switch (f) {
        case Format::text:
            return render_text(r);
        case Format::csv:
            return render_csv(r);
        case Format::json:
            return render_json(r);
    }
    throw std::logic_error("unhandled format");
}

// ---------------------------------------------------------------------------
// Commands.

inline Table key_value_table(std::string name, std::vector<std::tuple<std::string, Cell, std::string>> entries) {
    Table t{std::move(name), {{"quantity", ""}, {"value", ""}, {"unit", ""}}, {}, true};
    for (auto &[k, v, u] : entries) {
        t.add({k, v, u});
    }
    return t;
}

inline Report cmd_ideal(double reflection, double phi) {
    TeleportParams p{reflection, phi};
    p.validate();
    Report r{"ideal", {{"R", reflection}, {"phi", phi}}, {}, {}};

    FockState state = run_premeasurement(p, NetworkStage::before_tomography);
    Table outcomes{"outcomes",
                   {{"outcome", ""}, {"j_A0p", ""}, {"j_A0m", ""}, {"j_A1p", ""}, {"j_A1m", ""}, {"probability", ""},
                    {"correction", ""}},
                   {}};
    double total = 0.0;
    for (const auto &x : MeasurementOutcome::all()) {
        double prob = PovmElement(x).apply(state).probability;
        total += prob;
        const char *corr = "none";
        switch (correction_for(x)) {
            case Correction::identity:
                corr = "identity";
                break;
            case Correction::sigma_z:
                corr = "sigma_z";
                break;
            case Correction::failure:
                corr = "failure";
                break;
        }
        outcomes.add({x.label(), std::int64_t{x.clicks[0]}, std::int64_t{x.clicks[1]}, std::int64_t{x.clicks[2]},
                      std::int64_t{x.clicks[3]}, prob, std::string(corr)});
    }
    r.tables.push_back(std::move(outcomes));

    BlochVector in = input_bloch_vector(reflection, phi);
    Table bob{"bob",
              {{"outcome", ""}, {"probability", ""}, {"r_x", ""}, {"r_y", ""}, {"r_z", ""}, {"corrected_r_x", ""},
               {"corrected_r_y", ""}, {"corrected_r_z", ""}, {"fidelity", ""}},
              {}};
    std::vector<std::tuple<std::string, Cell, std::string>> summary;
    for (const auto &x : acceptance::good_outcomes()) {
        double prob = 0.0;
        auto q = acceptance::qubit(bob_conditional(p, x, std::nullopt, &prob));
        auto raw = q.bloch();
        auto fixed = apply_feed_forward(q, x).bloch();
        bob.add({x.label(), prob, raw.x, raw.y, raw.z, fixed.x, fixed.y, fixed.z, jozsa_fidelity(in, fixed)});
        summary.emplace_back("p(" + x.label() + ")", prob, "");
    }
    r.tables.push_back(std::move(bob));

    BlochVector tomo = tomography_bloch(p);
    summary.emplace_back("total_probability", total, "");
    summary.emplace_back("efficiency_with_feedforward", efficiency(true, p), "");
    summary.emplace_back("efficiency_without_feedforward", efficiency(false, p), "");
    summary.emplace_back("input_r_x", in.x, "");
    summary.emplace_back("input_r_y", in.y, "");
    summary.emplace_back("input_r_z", in.z, "");
    summary.emplace_back("tomography_r_x", tomo.x, "");
    summary.emplace_back("tomography_r_y", tomo.y, "");
    summary.emplace_back("tomography_r_z", tomo.z, "");
    summary.emplace_back("tomography_max_deviation", tomo.max_abs_diff(in), "");
    summary.emplace_back("fidelity", jozsa_fidelity(in, tomo), "");
    r.tables.push_back(key_value_table("summary", std::move(summary)));
    return r;
}

inline Report cmd_saw(const std::vector<double> &sigma2, size_t samples, const RunConfig &cfg) {
    if (sigma2.empty()) {
        throw std::invalid_argument("sigma2 grid is empty");
    }
    if (samples == 0) {
        throw std::invalid_argument("--samples must be at least 1");
    }
    Report r{"saw", {{"samples", static_cast<std::int64_t>(samples)}, {"seed", std::to_string(cfg.seed)}}, {}, {}};
    Table t{"fidelity",
            {{"sigma2", "rad^2"}, {"F_analytic", ""}, {"F_sampled", ""}, {"stderr", ""}, {"z_score", ""}},
            {}};
    for (double s2 : sigma2) {
        auto sampled = average_fidelity_sampled(s2, samples, cfg.seed, cfg.threads);
        double analytic = average_fidelity(s2);
        double z = sampled.standard_error > 0.0 ? (sampled.mean - analytic) / sampled.standard_error : 0.0;
        t.add({s2, analytic, sampled.mean, sampled.standard_error, z});
    }
    r.tables.push_back(std::move(t));
    r.notes.push_back("classical limit 2/3 = " + format_double(2.0 / 3.0));
    return r;
}

inline Report cmd_leviton(const std::vector<double> &gammas, const std::vector<double> &taus, const RunConfig &cfg) {
    auto curve = fidelity_curve(gammas, taus, cfg.threads);
    Report r{"leviton", {}, {}, {}};
    Table t{"fidelity",
            {{"gamma", "T"}, {"tau", "hbar Omega / k_B"}, {"F", ""}, {"A", ""}, {"q", ""}, {"fidelity", ""}},
            {}};
    for (const auto &pt : curve) {
        t.add({pt.gamma, pt.tau, pt.factors.f, pt.factors.a, pt.factors.q, pt.fidelity});
    }
    r.tables.push_back(std::move(t));
    for (size_t g = 0; g < gammas.size(); ++g) {
        bool monotone = true;
        for (size_t k = 1; k < taus.size(); ++k) {
            if (taus[k] >= taus[k - 1]) {
                monotone = monotone && curve[g * taus.size() + k].fidelity <= curve[g * taus.size() + k - 1].fidelity;
            }
        }
        r.notes.push_back("gamma " + format_double(gammas[g]) + ": fidelity non-increasing in tau: " +
                          (monotone ? "yes" : "no"));
    }
    return r;
}

inline const char *temperature_factor(CorrelatorKind k) {
    switch (k) {
        case CorrelatorKind::current:
            return "1";
        case CorrelatorKind::pair:
            return "F";
        case CorrelatorKind::triple:
            return "A";
    }
    return "?";
}

inline Report cmd_correlators(double reflection, double phi) {
    TeleportParams{reflection, phi}.validate();
    Report r{"correlators", {{"R", reflection}, {"phi", phi}}, {}, {}};
    Table t{"correlators",
            {{"setting", ""}, {"quantity", ""}, {"unit", ""}, {"simulated", ""}, {"closed_form", ""},
             {"deviation", ""}, {"temperature_factor", ""}},
            {}};
    double worst = 0.0;
    for (auto s : kTomographySettings) {
        auto sim = zero_T_correlators(reflection, phi, s);
        auto closed = correlator_closed_form(reflection, phi, s);
        for (const auto &tuple : tabulated_correlator_tuples()) {
            auto key = CorrelatorKey::make(tuple, s);
            double dev = std::abs(sim.at(key) - closed.at(key));
            worst = std::max(worst, dev);
            t.add({std::string(to_string(s)), key.name(), std::string(unit_of(key.kind)), sim.at(key), closed.at(key),
                   dev, std::string(temperature_factor(key.kind))});
        }
    }
    r.tables.push_back(std::move(t));
    Table bloch{"reconstruction", {{"setting", ""}, {"J", ""}, {"K", ""}, {"r_component", ""}, {"input", ""}}, {}};
    BlochVector in = input_bloch_vector(reflection, phi);
    for (size_t k = 0; k < 3; ++k) {
        auto s = kTomographySettings[k];
        auto b = bloch_from_correlators(zero_T_correlators(reflection, phi, s), s);
        bloch.add({std::string(to_string(s)), b.j, b.k, b.component, in[k]});
    }
    r.tables.push_back(std::move(bloch));
    r.notes.push_back("max deviation " + acceptance::sci(worst) + (worst < 1e-10 ? " < 1e-10" : " >= 1e-10"));
    return r;
}

inline Report cmd_circuit_check(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open circuit file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    CircuitDescription c;
    try {
        c = parse_circuit(buf.str());
    } catch (const ParseError &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    auto u = compose(c);
    std::string canonical = print_circuit(c);
    bool round_trip = parse_circuit(canonical) == c;
    Report r{"circuit-check", {{"path", path}}, {}, {}};
    r.tables.push_back(key_value_table("circuit", {{"modes", static_cast<std::int64_t>(c.modes.size()), ""},
                                                   {"elements", static_cast<std::int64_t>(c.elements.size()), ""},
                                                   {"unitarity_deviation", unitarity_deviation(u.matrix()), ""},
                                                   {"round_trip", round_trip, ""}}));
    Table m{"matrix", {{"row", ""}, {"col", ""}, {"re", ""}, {"im", ""}}, {}};
    for (size_t a = 0; a < u.size(); ++a) {
        for (size_t b = 0; b < u.size(); ++b) {
            Complex z = u.matrix()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            m.add({u.rows().label(a), u.cols().label(b), z.real(), z.imag()});
        }
    }
    r.tables.push_back(std::move(m));
    return r;
}

inline Report cmd_verify(const std::string &corpus, const RunConfig &cfg, bool &all_passed) {
    Report r{"verify", {{"corpus", corpus}, {"seed", std::to_string(cfg.seed)}}, {}, {}};
    Table t{"criteria", {{"id", ""}, {"status", ""}, {"title", ""}, {"detail", ""}}, {}};
    all_passed = true;
    for (const auto &c : run_acceptance(corpus, cfg.seed)) {
        all_passed = all_passed && c.passed;
        t.add({std::int64_t{c.id}, std::string(c.passed ? "PASS" : "FAIL"), c.title, c.detail});
        r.notes.push_back(format_criterion(c));
    }
    r.tables.push_back(std::move(t));
    return r;
}

// ---------------------------------------------------------------------------
// Entry point.

inline void emit(const Report &r, const RunConfig &cfg, std::ostream &out) {
    Format f = cfg.format.value_or(Format::text);
    if (!cfg.format && !cfg.out_path.empty()) {
        f = cfg.out_path.ends_with(".json") ? Format::json : Format::csv;
    }
    std::string body = render(r, f);
    if (cfg.out_path.empty()) {
        out << body;
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file || !(file << body) || !file.flush()) {
        throw std::runtime_error("cannot write '" + cfg.out_path + "'");
    }
}

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"etele: simulation of three-electron teleportation networks", "etele"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format_name;
    std::optional<std::uint64_t> seed;
    auto add_common = [&](CLI::App *sub, bool seeded) {
        sub->add_option("--format", format_name, "Output format (csv or json); human-readable text when omitted")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
        sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
        if (seeded) {
            sub->add_option("--seed", seed, "Random seed (default: $ETELE_SEED, else 20260101)");
        }
    };

    double reflection = 0.5;
    double phi = 0.0;
    std::string sigma2_grid = "0:4:0.5";
    size_t samples = 100000;
    std::string gamma_grid = "0.02,0.05,0.1";
    std::string tau_grid = "0:2:0.05";
    std::string circuit_path;
    std::string corpus = ETELE_DEFAULT_CORPUS_DIR;

    auto *ideal = app.add_subcommand("ideal", "Ideal protocol: outcome table, Bob's states, efficiency, tomography");
    ideal->add_option("--R", reflection, "Input-qubit reflection probability R in [0, 1]");
    ideal->add_option("--phi", phi, "Input-qubit phase");
    add_common(ideal, false);

    auto *saw = app.add_subcommand("saw", "Averaged fidelity under Gaussian phase noise");
    saw->add_option("--sigma2", sigma2_grid, "Total phase variance grid: a,b,c or start:stop:step");
    saw->add_option("--samples", samples, "Sampled input states per grid point");
    add_common(saw, true);

    auto *lev = app.add_subcommand("leviton", "Leviton fidelity versus temperature");
    lev->add_option("--gamma", gamma_grid, "Pulse widths (in periods): a,b,c or start:stop:step");
    lev->add_option("--tau", tau_grid, "Temperatures k_B T / (hbar Omega): a,b,c or start:stop:step");
    add_common(lev, false);

    auto *corr = app.add_subcommand("correlators", "Zero-temperature current correlators vs closed form");
    corr->add_option("--R", reflection, "Input-qubit reflection probability R in [0, 1]");
    corr->add_option("--phi", phi, "Input-qubit phase");
    add_common(corr, false);

    auto *check = app.add_subcommand("circuit-check", "Parse and compose a circuit file, report unitarity");
    check->add_option("path", circuit_path, "Circuit file")->required();
    add_common(check, false);

    auto *verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("--corpus", corpus, "Directory of .circ files for the round-trip check");
    add_common(verify, true);

    std::vector<std::string> argv_storage{"etele"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_storage) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "etele: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        if (format_name == "csv") {
            cfg.format = Format::csv;
        } else if (format_name == "json") {
            cfg.format = Format::json;
        }
        if (saw->parsed() || verify->parsed()) {
            cfg.seed = seed ? *seed : default_seed();
        }

        Report report;
        int code = kExitOk;
        if (ideal->parsed()) {
            report = cmd_ideal(reflection, phi);
        } else if (saw->parsed()) {
            report = cmd_saw(parse_grid(sigma2_grid), samples, cfg);
        } else if (lev->parsed()) {
            report = cmd_leviton(parse_grid(gamma_grid), parse_grid(tau_grid), cfg);
        } else if (corr->parsed()) {
            report = cmd_correlators(reflection, phi);
        } else if (check->parsed()) {
            report = cmd_circuit_check(circuit_path);
        } else if (verify->parsed()) {
            bool passed = false;
            report = cmd_verify(corpus, cfg, passed);
            code = passed ? kExitOk : kExitAcceptanceFailure;
        }
        emit(report, cfg, out);
        return code;
    } catch (const NonConvergence &e) {
        err << "etele: series did not converge: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "etele: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace etele::cli

#endif  // ETELE_CLI_HPP
