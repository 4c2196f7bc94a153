#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "spherium/chords.hpp"
#include "spherium/specfun.hpp"
#include "spherium/states.hpp"

namespace spherium {

/// Linear-entropy entanglement of one s-state.
///
/// The spatial part of every s-state is symmetric, so the physical spin sector is the singlet,
/// xi = 1 - T. The parallel-spin value 1 - 2T is reported for completeness only; it applies to
/// antisymmetric spatial parts.
struct EntanglementReport {
    SpheriumState state;
    double normalization = 0.0; ///< N = int |Psi|^2 dOmega_1 dOmega_2
    double purity = 1.0;        ///< T = Tr[(rho_1^coord)^2]
    double xi_singlet = 0.0;
    double xi_triplet = -1.0;
    bool product_state = false;
};

inline EntanglementReport entanglement(const SpheriumState& state,
                                       const ChordIntegrator& integrator = default_chord_integrator()) {
    EntanglementReport report;
    report.state = state;
    report.normalization = normalization(state);
    double purity = trace_rho1_squared(state, integrator);
    if (std::abs(1.0 - purity) <= 64.0 * std::numeric_limits<double>::epsilon()) {
        purity = 1.0;
        report.product_state = true;
    }
    report.purity = purity;
    report.xi_singlet = 1.0 - purity;
    report.xi_triplet = 1.0 - 2.0 * purity;
    return report;
}

/// xi of the n = 1 ground state from the explicit expressions for N_1 and I_0..I_4 with
/// gamma = 1/(d-2) and R^2 = (2d-3)(d-2)/4. Independent of the generic pattern loop.
inline double n1_closed_form_xi(int d, const SeriesOptions& series = {}) {
    if (d < 3) throw DomainError("n1_closed_form_xi: d must be >= 3, got " + std::to_string(d));
    const double dd = d;
    const double gamma = 1.0 / (dd - 2.0);
    const double r = std::sqrt((2.0 * dd - 3.0) * (dd - 2.0) / 4.0);
    const double pi = std::numbers::pi;
    const double lg_half_d = ln_gamma(0.5 * dd);
    const double lg_d_minus_half = ln_gamma(dd - 0.5);
    const double lg_d_plus_half = ln_gamma(dd + 0.5);

    const double norm = 4.0 * std::pow(pi, dd) *
                        ((1.0 + 2.0 * gamma * gamma * r * r) / std::exp(2.0 * lg_half_d) +
                         std::pow(2.0, dd) * gamma * r / (std::sqrt(pi) * std::exp(lg_d_minus_half)));

    const double i0 = std::exp(4.0 * ln_sphere_area(d));
    const double i1 = std::exp((dd + 3.0) * std::numbers::ln2 + (2.0 * dd - 0.5) * std::log(pi) - lg_d_minus_half -
                               2.0 * lg_half_d) *
                      r;
    const double i2 =
        std::exp((dd + 1.0) * std::log(4.0) + (2.0 * dd - 1.0) * std::log(pi) - 2.0 * lg_d_minus_half) * r * r;
    const double i3 = std::exp((3.0 * dd + 1.0) * std::numbers::ln2 + (2.0 * dd - 1.5) * std::log(pi) +
                               2.0 * lg_half_d - 3.0 * lg_d_minus_half) *
                      r * r * r;

    HypergeometricSpec plus{{0.5, 0.5, 0.5, 0.5, dd - 1.0}, {dd + 0.5, dd + 0.5, dd + 0.5, dd + 0.5}};
    HypergeometricSpec minus{{-0.5, -0.5, -0.5, -0.5, dd - 2.0}, {dd - 0.5, dd - 0.5, dd - 0.5, dd - 0.5}};
    const double i4 = std::exp((4.0 * dd - 3.0) * std::numbers::ln2 + (2.0 * dd - 2.0) * std::log(pi) +
                               4.0 * (lg_half_d - lg_d_plus_half)) *
                      std::pow(r, 4) *
                      (hyper_5f4_at_unity(plus, series) +
                       8.0 * std::pow(dd - 0.5, 4) * hyper_5f4_at_unity(minus, series));

    const double g2 = gamma * gamma;
    const double trace = (i0 + 4.0 * gamma * i1 + 6.0 * g2 * i2 + 4.0 * g2 * gamma * i3 + g2 * g2 * i4) / (norm * norm);
    return 1.0 - trace;
}

struct SweepRow {
    int d = 0;
    int n = 0;
    int m = -1;
    double radius = std::numeric_limits<double>::quiet_NaN();
    double energy = std::numeric_limits<double>::quiet_NaN();
    double xi_singlet = std::numeric_limits<double>::quiet_NaN();
    double xi_triplet = std::numeric_limits<double>::quiet_NaN();
    std::optional<std::string> error; ///< set when the (d, n) cell could not be solved

    bool ok() const { return !error.has_value(); }
};

struct SweepOptions {
    SolveOptions solve;
    unsigned threads = 1;
    const ChordIntegrator* integrator = nullptr; ///< nullptr: default_chord_integrator()
};

namespace detail {

inline std::vector<SweepRow> sweep_cell(int d, int n, const SweepOptions& options) {
    const ChordIntegrator& integrator = options.integrator ? *options.integrator : default_chord_integrator();
    std::vector<SweepRow> rows;
    try {
        for (const auto& state : solve_states(d, n, options.solve)) {
            const auto report = entanglement(state, integrator);
            rows.push_back({d, n, state.spec.m, state.radius, state.energy, report.xi_singlet, report.xi_triplet, {}});
        }
    } catch (const std::exception& e) {
        SweepRow failed;
        failed.d = d;
        failed.n = n;
        failed.error = e.what();
        rows.assign(1, failed);
    }
    return rows;
}

} // namespace detail

/// Every admissible (d, n, m) for d in [d_first, d_last], n in [n_first, n_last], sorted by (d, n, m).
/// Cells that fail are kept as rows carrying the error text.
inline std::vector<SweepRow> sweep(int d_first, int d_last, int n_first, int n_last, const SweepOptions& options = {}) {
    std::vector<std::pair<int, int>> cells;
    for (int d = d_first; d <= d_last; ++d) {
        for (int n = n_first; n <= n_last; ++n) cells.emplace_back(d, n);
    }
    std::vector<std::vector<SweepRow>> per_cell(cells.size());
    const std::size_t workers = std::max(1u, options.threads);
    for (std::size_t begin = 0; begin < cells.size(); begin += workers) {
        const std::size_t end = std::min(cells.size(), begin + workers);
        if (workers == 1) {
            per_cell[begin] = detail::sweep_cell(cells[begin].first, cells[begin].second, options);
            continue;
        }
        std::vector<std::future<std::vector<SweepRow>>> pending;
        for (std::size_t i = begin; i < end; ++i) {
            pending.push_back(std::async(std::launch::async, detail::sweep_cell, cells[i].first, cells[i].second,
                                         std::cref(options)));
        }
        for (std::size_t i = begin; i < end; ++i) per_cell[i] = pending[i - begin].get();
    }
    std::vector<SweepRow> rows;
    for (auto& cell : per_cell) rows.insert(rows.end(), cell.begin(), cell.end());
    return rows;
}

} // namespace spherium
