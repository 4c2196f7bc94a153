#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <string>

#include "spherium/errors.hpp"

namespace spherium {

/// ln Γ(x) for x > 0.
inline double ln_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("ln_gamma: argument must be positive, got " + std::to_string(x));
    }
    return std::lgamma(x);
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
inline double pochhammer(double a, unsigned k) {
    double result = 1.0;
    for (unsigned i = 0; i < k; ++i) {
        result *= a + static_cast<double>(i);
    }
    return result;
}

/// Gegenbauer polynomial C_n^alpha(x) by the three-term recurrence
///   (k+1) C_{k+1} = 2x(k+alpha) C_k - (k+2alpha-1) C_{k-1}.
inline double gegenbauer(unsigned n, double alpha, double x) {
    if (alpha == 0.0) {
        throw DomainError("gegenbauer: alpha must be nonzero");
    }
    double previous = 1.0;
    if (n == 0) return previous;
    double current = 2.0 * alpha * x;
    for (unsigned k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double next = (2.0 * x * (kd + alpha) * current - (kd + 2.0 * alpha - 1.0) * previous) / (kd + 1.0);
        previous = current;
        current = next;
    }
    return current;
}

/// ln Ω_d where Ω_d = 2 π^{d/2} / Γ(d/2) is the area of the unit (d-1)-sphere.
inline double ln_sphere_area(int d) {
    if (d < 2) {
        throw DomainError("sphere_area: dimension must be >= 2, got " + std::to_string(d));
    }
    const double half = 0.5 * d;
    return std::numbers::ln2 + half * std::log(std::numbers::pi) - ln_gamma(half);
}

inline double sphere_area(int d) { return std::exp(ln_sphere_area(d)); }

/// Parameters of a 5F4 series evaluated at unit argument.
struct HypergeometricSpec {
    std::array<double, 5> upper{};
    std::array<double, 4> lower{};

    /// Σ lower − Σ upper; the series at z = 1 converges iff this is positive.
    double convergence_margin() const {
        return std::accumulate(lower.begin(), lower.end(), 0.0) - std::accumulate(upper.begin(), upper.end(), 0.0);
    }
};

namespace detail {

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && std::nearbyint(x) == x; }

} // namespace detail

struct SeriesOptions {
    double tol = 1e-15;
    std::size_t max_terms = 1'000'000;
};

/// 5F4(a1..a5; b1..b4; 1) by forward term-ratio recursion
///   t_{k+1}/t_k = Π(a_i+k) / (Π(b_j+k) (k+1)).
/// Stops when a term vanishes exactly (terminating series) or |t_k| < tol |S_k|.
inline double hyper_5f4_at_unity(const HypergeometricSpec& spec, const SeriesOptions& options = {}) {
    for (double b : spec.lower) {
        if (detail::is_nonpositive_integer(b)) {
            throw DomainError("hyper_5f4_at_unity: lower parameter is zero or a negative integer");
        }
    }
    if (!(spec.convergence_margin() > 0.0)) {
        throw DomainError("hyper_5f4_at_unity: series diverges at unit argument (non-positive convergence margin)");
    }
    if (!(options.tol > 0.0)) {
        throw DomainError("hyper_5f4_at_unity: tolerance must be positive");
    }

    double term = 1.0;
    double sum = 1.0;
    for (std::size_t k = 0; k < options.max_terms; ++k) {
        const double kd = static_cast<double>(k);
        double numerator = 1.0;
        for (double a : spec.upper) numerator *= a + kd;
        double denominator = kd + 1.0;
        for (double b : spec.lower) denominator *= b + kd;
        term *= numerator / denominator;
        if (term == 0.0) return sum;
        sum += term;
        if (std::abs(term) < options.tol * std::abs(sum)) return sum;
    }
    throw ConvergenceError("hyper_5f4_at_unity: iteration cap of " + std::to_string(options.max_terms) +
                               " terms exceeded, last term " + std::to_string(term),
                           term);
}

} // namespace spherium
