#pragma once

// Quasi-exact s-states of two electrons on a (d-1)-sphere.
//
// The spatial wavefunction is a polynomial in the chord length u = r12,
//   Psi(u) = sum_{k=0}^{n} s_k u^k,   s_0 = 1,  s_1 = 1/(d-2),
//   s_{k+2} = (s_{k+1} + [k(k+2d-4)/(4R^2) - E] s_k) / ((k+2)(k+d-1)),
// and the series truncates iff s_{n+1}(E) = 0 with R^2 E = (n/2)(n/2+d-2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spherium/errors.hpp"

namespace spherium {

struct StateSpec {
    int d = 3; ///< embedding dimension; electrons live on S^{d-1}
    int n = 1; ///< polynomial degree
    int m = 0; ///< excitation index = nodes of Psi in (0, 2R)

    friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

/// A solved state. Energy in hartree, radius in bohr, coeffs[k] = s_k in bohr^-k.
struct SpheriumState {
    StateSpec spec;
    double energy = 0.0;
    double radius = 0.0;
    std::vector<double> coeffs;
};

struct SolveOptions {
    int max_dimension = 30;
};

/// Ascending-power polynomial coefficients.
using Polynomial = std::vector<double>;

namespace detail {

inline void validate_dn(int d, int n, const SolveOptions& options) {
    if (d < 3) {
        throw DomainError("dimension d must be >= 3 (s_1 = 1/(d-2) is singular otherwise), got d=" +
                          std::to_string(d));
    }
    if (d > options.max_dimension) {
        throw DomainError("dimension d=" + std::to_string(d) + " exceeds the configured cap of " +
                          std::to_string(options.max_dimension));
    }
    if (n < 1) {
        throw DomainError("polynomial degree n must be >= 1, got n=" + std::to_string(n));
    }
}

/// n(n+2d-4)/4, the value of R^2 E on the quantization curve.
inline double radius_energy_product(int d, int n) { return 0.25 * n * (n + 2.0 * d - 4.0); }

inline double horner(std::span<const double> p, double x) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// p(x), p'(x), p''(x) in one pass.
struct HornerDerivatives {
    double value = 0.0;
    double first = 0.0;
    double second = 0.0;
};

inline HornerDerivatives horner_derivatives(std::span<const double> p, double x) {
    HornerDerivatives h;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        h.second = h.second * x + 2.0 * h.first;
        h.first = h.first * x + h.value;
        h.value = h.value * x + *it;
    }
    return h;
}

inline Polynomial poly_axpy(const Polynomial& a, double scale, const Polynomial& b_times_x) {
    // a + scale * x * b
    Polynomial out(std::max(a.size(), b_times_x.size() + 1), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b_times_x.size(); ++i) out[i + 1] += scale * b_times_x[i];
    return out;
}

} // namespace detail

/// s_{n+1} as a polynomial in E, after eliminating R through R^2 E = (n/2)(n/2+d-2).
/// Degree is floor((n+1)/2).
inline Polynomial energy_polynomial(int d, int n, const SolveOptions& options = {}) {
    detail::validate_dn(d, n, options);
    const double curve = 4.0 * detail::radius_energy_product(d, n); // n(n+2d-4)
    std::vector<Polynomial> s{{1.0}, {1.0 / (d - 2.0)}};
    s.reserve(n + 2);
    for (int k = 0; k + 2 <= n + 1; ++k) {
        // [k(k+2d-4)/(4R^2) - E] = E * c_k
        const double c_k = k * (k + 2.0 * d - 4.0) / curve - 1.0;
        Polynomial next = detail::poly_axpy(s[k + 1], c_k, s[k]);
        const double denom = (k + 2.0) * (k + d - 1.0);
        for (double& c : next) c /= denom;
        s.push_back(std::move(next));
    }
    Polynomial result = s[n + 1];
    while (result.size() > 1 && result.back() == 0.0) result.pop_back();
    return result;
}

/// Forward recurrence s_0..s_{count-1} at fixed (E, R).
inline std::vector<double> recurrence_coefficients(int d, double energy, double radius, int count) {
    std::vector<double> s(std::max(count, 2));
    s[0] = 1.0;
    s[1] = 1.0 / (d - 2.0);
    const double inv_4r2 = 1.0 / (4.0 * radius * radius);
    for (int k = 0; k + 2 < count; ++k) {
        s[k + 2] = (s[k + 1] + (k * (k + 2.0 * d - 4.0) * inv_4r2 - energy) * s[k]) / ((k + 2.0) * (k + d - 1.0));
    }
    s.resize(count);
    return s;
}

/// (s_0, ..., s_n) for the state's fixed E and R.
inline std::vector<double> coefficients(const SpheriumState& state) {
    return recurrence_coefficients(state.spec.d, state.energy, state.radius, state.spec.n + 1);
}

/// Psi(u) by Horner; u is a chord length, so 0 <= u <= 2R.
inline double eval_wavefunction(const SpheriumState& state, double u) {
    const double diameter = 2.0 * state.radius;
    if (!(u >= 0.0) || u > diameter * (1.0 + 1e-12)) {
        throw DomainError("eval_wavefunction: chord length " + std::to_string(u) + " outside [0, 2R] = [0, " +
                          std::to_string(diameter) + "]");
    }
    return detail::horner(state.coeffs, std::min(u, diameter));
}

/// Hyperspherical angles of one point on S^{d-1}: polar angles theta_1..theta_{d-2} in [0, pi]
/// and the azimuth phi in [0, 2pi).
struct SphereAngles {
    std::vector<double> polar;
    double azimuth = 0.0;
};

/// Unit vector in R^d for the given angles (d = polar.size() + 2).
inline std::vector<double> to_unit_vector(const SphereAngles& angles) {
    const std::size_t d = angles.polar.size() + 2;
    std::vector<double> x(d);
    double sin_product = 1.0;
    for (std::size_t j = 0; j < angles.polar.size(); ++j) {
        x[j] = sin_product * std::cos(angles.polar[j]);
        sin_product *= std::sin(angles.polar[j]);
    }
    x[d - 2] = sin_product * std::cos(angles.azimuth);
    x[d - 1] = sin_product * std::sin(angles.azimuth);
    return x;
}

/// Chord length between two points of a sphere of radius R, u = R sqrt(2(1 - cos alpha)).
inline double chord_from_angles(double radius, const SphereAngles& a, const SphereAngles& b) {
    if (a.polar.size() != b.polar.size()) {
        throw DomainError("chord_from_angles: angle sets belong to different dimensions");
    }
    const auto xa = to_unit_vector(a);
    const auto xb = to_unit_vector(b);
    double cos_alpha = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) cos_alpha += xa[i] * xb[i];
    cos_alpha = std::clamp(cos_alpha, -1.0, 1.0);
    return std::min(radius * std::sqrt(2.0 * (1.0 - cos_alpha)), 2.0 * radius);
}

inline double eval_wavefunction_angles(const SpheriumState& state, const SphereAngles& first,
                                       const SphereAngles& second) {
    const auto expected = static_cast<std::size_t>(state.spec.d - 2);
    if (first.polar.size() != expected || second.polar.size() != expected) {
        throw DomainError("eval_wavefunction_angles: expected " + std::to_string(expected) +
                          " polar angles per electron for d=" + std::to_string(state.spec.d));
    }
    return eval_wavefunction(state, chord_from_angles(state.radius, first, second));
}

/// d = 3 convenience: (theta, phi) per electron.
inline double eval_wavefunction_angles(const SpheriumState& state, double theta1, double phi1, double theta2,
                                       double phi2) {
    return eval_wavefunction_angles(state, SphereAngles{{theta1}, phi1}, SphereAngles{{theta2}, phi2});
}

/// Left side minus right side of the radial s-state equation
///   [u^2/4R^2 - 1] Psi'' + [u(2d-3)/4R^2 - (d-2)/u] Psi' + Psi/u - E Psi.
inline double ode_residual(const SpheriumState& state, double u) {
    const double r = state.radius;
    if (!(u > 0.0) || !(u < 2.0 * r)) {
        throw DomainError("ode_residual: u must lie in the open interval (0, 2R)");
    }
    const int d = state.spec.d;
    const auto h = detail::horner_derivatives(state.coeffs, u);
    const double inv_4r2 = 1.0 / (4.0 * r * r);
    return (u * u * inv_4r2 - 1.0) * h.second + (u * (2.0 * d - 3.0) * inv_4r2 - (d - 2.0) / u) * h.first +
           h.value / u - state.energy * h.value;
}

/// Zeros of Psi in (0, 2R): sign changes on a uniform grid, refined by bisection.
inline std::vector<double> wavefunction_nodes(const SpheriumState& state, int grid = 10'000) {
    const double diameter = 2.0 * state.radius;
    const std::span<const double> p(state.coeffs);
    std::vector<double> nodes;
    auto check_simple = [&](double root) {
        const auto h = detail::horner_derivatives(p, root);
        double scale = 0.0;
        for (std::size_t k = 1; k < p.size(); ++k) {
            scale += k * std::abs(p[k]) * std::pow(root, static_cast<double>(k) - 1.0);
        }
        if (std::abs(h.first) <= 1e-10 * scale) {
            throw NumericError("wavefunction_nodes: node of multiplicity > 1 near u=" + std::to_string(root));
        }
    };
    double u_prev = diameter / grid;
    double f_prev = detail::horner(p, u_prev);
    if (f_prev == 0.0) {
        check_simple(u_prev);
        nodes.push_back(u_prev);
    }
    for (int i = 2; i < grid; ++i) {
        const double u = diameter * i / grid;
        const double f = detail::horner(p, u);
        if (f == 0.0) {
            check_simple(u);
            nodes.push_back(u);
        } else if (f_prev != 0.0 && (f < 0.0) != (f_prev < 0.0)) {
            double lo = u_prev, hi = u, f_lo = f_prev;
            for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = detail::horner(p, mid);
                if (f_mid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((f_mid < 0.0) == (f_lo < 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            const double root = 0.5 * (lo + hi);
            check_simple(root);
            nodes.push_back(root);
        }
        u_prev = u;
        f_prev = f;
    }
    return nodes;
}

namespace detail {

inline double polish_root(const Polynomial& p, double x) {
    for (int it = 0; it < 60; ++it) {
        const auto h = horner_derivatives(p, x);
        if (h.first == 0.0) break;
        const double step = h.value / h.first;
        x -= step;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) break;
    }
    return x;
}

/// Real roots via eigenvalues of the companion matrix, Newton-polished.
inline std::vector<double> real_roots(const Polynomial& p) {
    const auto degree = static_cast<Eigen::Index>(p.size()) - 1;
    if (degree < 1) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -p[i] / p[degree];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw NumericError("real_roots: companion eigenvalue solver failed");
    }
    std::vector<double> roots;
    for (const std::complex<double>& z : solver.eigenvalues()) {
        if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z.real()))) continue;
        roots.push_back(polish_root(p, z.real()));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)); }),
                roots.end());
    return roots;
}

} // namespace detail

/// Every quasi-exact state for (d, n), ordered so that result[m].spec.m == m.
inline std::vector<SpheriumState> solve_states(int d, int n, const SolveOptions& options = {}) {
    const Polynomial quantization = energy_polynomial(d, n, options);
    std::vector<SpheriumState> states;
    for (double energy : detail::real_roots(quantization)) {
        if (!(energy > 0.0)) continue;
        SpheriumState state;
        state.spec = {d, n, 0};
        state.energy = energy;
        state.radius = std::sqrt(detail::radius_energy_product(d, n) / energy);
        state.coeffs = recurrence_coefficients(d, energy, state.radius, n + 1);
        state.spec.m = static_cast<int>(wavefunction_nodes(state).size());
        states.push_back(std::move(state));
    }
    if (states.empty()) {
        throw EmptySpectrumError("no positive real energy solves the quantization condition for d=" +
                                 std::to_string(d) + ", n=" + std::to_string(n));
    }
    std::sort(states.begin(), states.end(), [](const auto& a, const auto& b) { return a.spec.m < b.spec.m; });
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].spec.m != static_cast<int>(i)) {
            throw NumericError("solve_states: node counts do not enumerate 0..M-1 for d=" + std::to_string(d) +
                               ", n=" + std::to_string(n));
        }
    }
    return states;
}

/// The single state (d, n, m); DomainError if m is not admissible.
inline SpheriumState solve_state(const StateSpec& spec, const SolveOptions& options = {}) {
    auto states = solve_states(spec.d, spec.n, options);
    if (spec.m < 0 || spec.m >= static_cast<int>(states.size())) {
        throw DomainError("excitation index m=" + std::to_string(spec.m) + " not admissible for d=" +
                          std::to_string(spec.d) + ", n=" + std::to_string(spec.n) + " (" +
                          std::to_string(states.size()) + " state(s))");
    }
    return states[spec.m];
}

} // namespace spherium
