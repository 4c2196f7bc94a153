#pragma once

// Tabular renderings of states, reproduced tables, figure datasets and verification reports.
// CSV follows RFC 4180 with '.' decimals and LF line endings; JSON mirrors the CSV headers.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"

#include "spherium/chords.hpp"
#include "spherium/entangle.hpp"
#include "spherium/oracle.hpp"
#include "spherium/states.hpp"

namespace spherium {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

inline std::string format_significant(double x, int digits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.{}g}", x, digits);
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

inline std::string render_cell(const Cell& cell, int digits) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* x = std::get_if<double>(&cell)) return format_significant(*x, digits);
    return std::get<std::string>(cell);
}

inline std::string to_csv(const Table& table, int digits = 6) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out += (i ? "," : "") + csv_escape(table.header[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + csv_escape(render_cell(row[i], digits));
        }
        out += '\n';
    }
    return out;
}

/// Array of objects keyed by header; doubles are rounded to `digits` significant digits.
inline nlohmann::ordered_json to_json(const Table& table, int digits = 6) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json object;
        for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) {
            const auto& cell = row[i];
            if (const auto* n = std::get_if<std::int64_t>(&cell)) {
                object[table.header[i]] = *n;
            } else if (const auto* x = std::get_if<double>(&cell)) {
                if (std::isfinite(*x)) {
                    object[table.header[i]] = std::stod(format_significant(*x, digits));
                } else {
                    object[table.header[i]] = nullptr;
                }
            } else {
                object[table.header[i]] = std::get<std::string>(cell);
            }
        }
        out.push_back(std::move(object));
    }
    return out;
}

inline std::string render(const Table& table, const std::string& format, int digits = 6) {
    if (format == "json") return to_json(table, digits).dump(2) + "\n";
    return to_csv(table, digits);
}

// ---------------------------------------------------------------------------------------------

/// One row with R, E, xi, the spin-parallel value, N, T and s_0..s_n.
inline Table state_table(const EntanglementReport& report) {
    const auto& st = report.state;
    Table table{{"d", "n", "m", "R", "E", "xi", "xi_triplet", "N", "T"}, {}};
    std::vector<Cell> row{std::int64_t{st.spec.d}, std::int64_t{st.spec.n}, std::int64_t{st.spec.m}, st.radius,
                          st.energy,           report.xi_singlet,    report.xi_triplet,   report.normalization,
                          report.purity};
    for (std::size_t k = 0; k < st.coeffs.size(); ++k) {
        table.header.push_back("s" + std::to_string(k));
        row.emplace_back(st.coeffs[k]);
    }
    table.rows.push_back(std::move(row));
    return table;
}

inline constexpr int table_d_first = 3;
inline constexpr int table_d_last = 6;
inline constexpr int table_n_last = 3;

/// Radius, energy and xi of the m = 0 states, d = 3..6, n = 1..3 (rows ordered by n, then d).
inline Table results_table(const ChordIntegrator& integrator = default_chord_integrator()) {
    Table table{{"d", "n", "m", "R", "E", "xi"}, {}};
    for (int n = 1; n <= table_n_last; ++n) {
        for (int d = table_d_first; d <= table_d_last; ++d) {
            const auto state = solve_state({d, n, 0});
            const auto report = entanglement(state, integrator);
            table.rows.push_back({std::int64_t{d}, std::int64_t{n}, std::int64_t{0}, state.radius, state.energy,
                                  report.xi_singlet});
        }
    }
    return table;
}

/// s_k taken from the ground state with n = k, d = 3..6.
inline Table coefficients_table() {
    Table table{{"d", "s0", "s1", "s2", "s3"}, {}};
    for (int d = table_d_first; d <= table_d_last; ++d) {
        std::vector<Cell> row{std::int64_t{d}, 1.0};
        for (int k = 1; k <= table_n_last; ++k) row.emplace_back(solve_state({d, k, 0}).coeffs[k]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

/// n = 1 ground state: delta = 2d-3, gamma = 1/(d-2), R^2 = delta/(4 gamma), E = gamma.
inline Table groundstate_table() {
    Table table{{"d", "n", "m", "delta", "gamma", "R", "E", "delta_formula", "gamma_formula"}, {}};
    for (int d = table_d_first; d <= table_d_last; ++d) {
        const auto state = solve_state({d, 1, 0});
        table.rows.push_back({std::int64_t{d}, std::int64_t{1}, std::int64_t{0}, std::int64_t{2 * d - 3},
                              state.coeffs[1], state.radius, state.energy, std::string("2d-3"),
                              std::string("1/(d-2)")});
    }
    return table;
}

struct FigureOptions {
    int figure = 2;
    int d_max = 6;
    int n_max = 6;
};

/// Figure datasets as (x, y, series):
///   2: R vs xi at d = 3, n = 1..n_max;  4: d vs xi per n, d = 3..d_max, n = 1..n_max;
///   5: d vs closed-form n = 1 xi, d = 3..d_max;  6: E vs xi per d, d = 3..d_max, n = 1..n_max.
/// Unsolvable cells become rows with empty x, y and a "warning: ..." series.
inline Table figure_table(const FigureOptions& options, const ChordIntegrator& integrator = default_chord_integrator()) {
    Table table{{"x", "y", "series"}, {}};
    SweepOptions sweep_options;
    sweep_options.integrator = &integrator;
    sweep_options.solve.max_dimension = std::max(options.d_max, SolveOptions{}.max_dimension);
    auto warn = [&](const SweepRow& row) {
        table.rows.push_back({std::string(), std::string(),
                              "warning: d=" + std::to_string(row.d) + " n=" + std::to_string(row.n) + ": " +
                                  row.error.value_or("unknown error")});
    };
    switch (options.figure) {
    case 2:
        for (const auto& row : sweep(3, 3, 1, options.n_max, sweep_options)) {
            if (!row.ok()) {
                warn(row);
            } else if (row.m == 0) {
                table.rows.push_back({row.radius, row.xi_singlet, std::string("d=3")});
            }
        }
        break;
    case 4:
        for (int n = 1; n <= options.n_max; ++n) {
            for (const auto& row : sweep(3, options.d_max, n, n, sweep_options)) {
                if (!row.ok()) {
                    warn(row);
                } else if (row.m == 0) {
                    table.rows.push_back({static_cast<double>(row.d), row.xi_singlet, "n=" + std::to_string(n)});
                }
            }
        }
        break;
    case 5:
        for (int d = 3; d <= options.d_max; ++d) {
            table.rows.push_back({static_cast<double>(d), n1_closed_form_xi(d, integrator.series_options()),
                                  std::string("n=1")});
        }
        break;
    case 6:
        for (const auto& row : sweep(3, options.d_max, 1, options.n_max, sweep_options)) {
            if (!row.ok()) {
                warn(row);
            } else if (row.m == 0) {
                table.rows.push_back({row.energy, row.xi_singlet, "d=" + std::to_string(row.d)});
            }
        }
        break;
    default: throw DomainError("unknown figure id " + std::to_string(options.figure) + " (expected 2, 4, 5 or 6)");
    }
    return table;
}

/// Normalized psi = Psi / (R^{d-1} sqrt(N)) over theta1 in [0, pi] x phi1 in [0, 2pi] for a fixed
/// second electron; d = 3 only.
inline Table wavegrid_table(const SpheriumState& state, double theta2, double phi2, int resolution) {
    if (state.spec.d != 3) throw DomainError("wavegrid is defined for d = 3 only");
    if (resolution < 2) throw DomainError("wavegrid resolution must be >= 2");
    const double scale = 1.0 / (std::pow(state.radius, state.spec.d - 1) * std::sqrt(normalization(state)));
    Table table{{"theta1", "phi1", "psi"}, {}};
    for (int i = 0; i < resolution; ++i) {
        const double theta1 = std::numbers::pi * i / (resolution - 1);
        for (int j = 0; j < resolution; ++j) {
            const double phi1 = 2.0 * std::numbers::pi * j / (resolution - 1);
            table.rows.push_back(
                {theta1, phi1, scale * eval_wavefunction_angles(state, theta1, phi1, theta2, phi2)});
        }
    }
    return table;
}

// ---------------------------------------------------------------------------------------------

inline std::string pattern_label(const ChordPattern& p) {
    return fmt::format("({},{},{},{})", p.q1, p.q2, p.q3, p.q4);
}

inline nlohmann::ordered_json verify_json(const VerifyReport& report) {
    nlohmann::ordered_json out;
    const auto& c = report.config;
    out["config"] = {{"d_min", c.d_min},     {"d_max", c.d_max},
                     {"q_max", c.q_max},     {"samples", c.samples},
                     {"four_center_samples", c.four_center_samples ? c.four_center_samples : c.samples},
                     {"seed", c.seed},       {"quad_nodes", c.quad_nodes},
                     {"radius", c.radius}};
    out["passed"] = report.passed();
    auto cases = nlohmann::ordered_json::array();
    for (const auto& vc : report.cases) {
        nlohmann::ordered_json j;
        j["kind"] = vc.kind;
        j["d"] = vc.d;
        if (vc.kind == "quadrature") {
            j["q"] = vc.pattern.q1;
        } else {
            j["pattern"] = {vc.pattern.q1, vc.pattern.q2, vc.pattern.q3, vc.pattern.q4};
            j["samples"] = vc.samples;
            j["std_error"] = vc.std_error;
            j["z"] = vc.z;
        }
        j["analytic"] = vc.analytic;
        j["estimate"] = vc.estimate;
        j["rel_delta"] = vc.rel_delta;
        j["status"] = to_string(vc.status);
        if (!vc.error.empty()) j["error"] = vc.error;
        cases.push_back(std::move(j));
    }
    out["cases"] = std::move(cases);
    return out;
}

inline std::string verify_text(const VerifyReport& report) {
    std::string out;
    std::size_t failures = 0, warnings = 0;
    for (const auto& vc : report.cases) {
        if (vc.status == CaseStatus::fail) ++failures;
        if (vc.status == CaseStatus::warn) ++warnings;
        if (vc.kind == "quadrature") {
            out += fmt::format("{:<4} quadrature  d={} q={:<2}            closed={:.12e} quad={:.12e} rel={:.2e}",
                               to_string(vc.status), vc.d, vc.pattern.q1, vc.analytic, vc.estimate, vc.rel_delta);
        } else {
            out += fmt::format("{:<4} monte-carlo d={} pattern={:<10} closed={:.12e} mc={:.12e} se={:.3e} z={:+.3f}",
                               to_string(vc.status), vc.d, pattern_label(vc.pattern), vc.analytic, vc.estimate,
                               vc.std_error, vc.z);
        }
        if (!vc.error.empty()) out += " error=" + vc.error;
        out += '\n';
    }
    out += fmt::format("{} cases, {} failed, {} warnings: {}\n", report.cases.size(), failures, warnings,
                       report.passed() ? "PASS" : "FAIL");
    return out;
}

} // namespace spherium
