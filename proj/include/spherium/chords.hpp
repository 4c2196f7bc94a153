#pragma once

// Integrals of chord-length powers over products of (d-1)-spheres.
//
// Four independent points 1, 2, 1', 2' on the unit sphere form the cycle 1-2-1'-2'-1 whose
// chords carry the exponents
//   q1 on r_{12},  q2 on r_{12'},  q3 on r_{1'2},  q4 on r_{1'2'}.
// Any subset of chords with fewer than four members is a forest, so its integral factorizes
// into single-chord moments. The closed cycle is a trace of four Funk-Hecke operators,
//   I = sum_n dim_n prod_i kappa_n(q_i),  kappa_n(q) = kappa_0(q) (-q/2)_n / (d-1+q/2)_n,
// which sums to two 5F4 series at unit argument.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "spherium/errors.hpp"
#include "spherium/specfun.hpp"
#include "spherium/states.hpp"

namespace spherium {

struct ChordPattern {
    int q1 = 0; ///< r_{12}
    int q2 = 0; ///< r_{12'}
    int q3 = 0; ///< r_{1'2}
    int q4 = 0; ///< r_{1'2'}

    std::array<int, 4> powers() const { return {q1, q2, q3, q4}; }
    int total() const { return q1 + q2 + q3 + q4; }
    int active() const { return (q1 > 0) + (q2 > 0) + (q3 > 0) + (q4 > 0); }

    friend bool operator==(const ChordPattern&, const ChordPattern&) = default;
};

/// Integral value; units bohr^{sum q} times (solid angle)^4.
struct ChordIntegralValue {
    double value = 0.0;
    ChordPattern pattern;
    int d = 3;
    double radius = 1.0;
};

namespace detail {

inline constexpr double ln_pi = 1.1447298858494002; // ln(pi)

inline void validate_chord_args(int d, double radius) {
    if (d < 3) throw DomainError("chord integrals need d >= 3, got d=" + std::to_string(d));
    if (!(radius > 0.0)) throw DomainError("chord integrals need a positive radius");
}

inline void validate_power(int q) {
    if (q < 0) throw DomainError("chord exponents must be non-negative, got " + std::to_string(q));
}

/// ln of  int r^q dOmega  over one point for a fixed other point, at R = 1:
///   kappa_0(q) = 2^{q+d-1} pi^{(d-1)/2} Gamma((d+q-1)/2) / Gamma(d-1+q/2).
inline double ln_single_chord_integral(int d, int q) {
    return (q + d - 1.0) * std::numbers::ln2 + 0.5 * (d - 1.0) * ln_pi + ln_gamma(0.5 * (d + q - 1.0)) -
           ln_gamma(d - 1.0 + 0.5 * q);
}

inline double ln_gamma_ratio_sum(int d, std::span<const int> qs) {
    double sum = 0.0;
    for (int q : qs) sum += ln_gamma(0.5 * (d + q - 1.0)) - ln_gamma(d - 1.0 + 0.5 * q);
    return sum;
}

inline int sum_of(std::span<const int> qs) {
    int s = 0;
    for (int q : qs) s += q;
    return s;
}

/// Three zero exponents, one active chord.
inline double ln_one_center(int d, std::span<const int> qs) {
    return (d - 1.0 + sum_of(qs)) * std::numbers::ln2 + 0.5 * (d - 1.0) * ln_pi + ln_gamma_ratio_sum(d, qs) +
           3.0 * ln_sphere_area(d);
}

/// Two active chords (adjacent or disjoint in the cycle).
inline double ln_two_center(int d, std::span<const int> qs) {
    return (2.0 * d - 2.0 + sum_of(qs)) * std::numbers::ln2 + (d - 1.0) * ln_pi + ln_gamma_ratio_sum(d, qs) +
           2.0 * ln_sphere_area(d);
}

/// Three active chords; they always form a path in the 4-cycle.
inline double ln_three_center(int d, std::span<const int> qs) {
    return (3.0 * d - 3.0 + sum_of(qs)) * std::numbers::ln2 + 1.5 * (d - 1.0) * ln_pi +
           ln_gamma_ratio_sum(d, qs) + ln_sphere_area(d);
}

/// All four chords active. Value = exp(prefactor) * (F_A + c F_B) with
///   F_A = 5F4(-q_i/2, d-2; d-1+q_i/2; 1),
///   F_B = 5F4(1-q_i/2, d-1; d+q_i/2; 1),
///   c   = 2 prod_i (q_i/2) / (d-1+q_i/2).
/// For q_i = 1 this is the familiar pair of 5F4(-1/2,...) and 5F4(1/2,...) series.
inline double four_center_unit(int d, const std::array<int, 4>& qs, const SeriesOptions& series) {
    double ln_prefactor = 0.0;
    HypergeometricSpec first{}, second{};
    double coupling = 2.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double half = 0.5 * qs[i];
        ln_prefactor += ln_single_chord_integral(d, qs[i]);
        first.upper[i] = -half;
        first.lower[i] = d - 1.0 + half;
        second.upper[i] = 1.0 - half;
        second.lower[i] = d + half;
        coupling *= half / (d - 1.0 + half);
    }
    first.upper[4] = d - 2.0;
    second.upper[4] = d - 1.0;
    const double series_sum = hyper_5f4_at_unity(first, series) + coupling * hyper_5f4_at_unity(second, series);
    return std::exp(ln_prefactor) * series_sum;
}

} // namespace detail

/// One-center moment  int r_{12}^q dOmega_1 dOmega_2
///   = 2^{d+q} pi^{d-1/2} Gamma((d+q-1)/2) R^q / (Gamma(d/2) Gamma(d+q/2-1)).
/// At q = 0 this is Omega_d^2.
inline double chord_moment(int d, int q, double radius) {
    detail::validate_chord_args(d, radius);
    detail::validate_power(q);
    const double ln_value = (d + q) * std::numbers::ln2 + (d - 0.5) * detail::ln_pi +
                            ln_gamma(0.5 * (d + q - 1.0)) - ln_gamma(0.5 * d) - ln_gamma(d + 0.5 * q - 1.0) +
                            q * std::log(radius);
    return std::exp(ln_value);
}

/// Evaluates four-point chord integrals, memoizing the R = 1 value per (d, sorted exponents).
/// The integral is symmetric in (q1..q4), so the sorted tuple is a valid cache key.
/// Safe to share between threads.
class ChordIntegrator {
public:
    explicit ChordIntegrator(SeriesOptions series = {}) : series_(series) {}

    ChordIntegrator(const ChordIntegrator&) = delete;
    ChordIntegrator& operator=(const ChordIntegrator&) = delete;

    const SeriesOptions& series_options() const { return series_; }

    /// Value at R = 1.
    double unit_value(int d, const ChordPattern& pattern) const {
        detail::validate_chord_args(d, 1.0);
        auto key = std::make_pair(d, pattern.powers());
        for (int q : key.second) detail::validate_power(q);
        std::sort(key.second.begin(), key.second.end());
        {
            std::shared_lock lock(mutex_);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        }
        const double value = evaluate_unit(d, key.second);
        std::unique_lock lock(mutex_);
        cache_.emplace(key, value);
        return value;
    }

    ChordIntegralValue integrate(int d, const ChordPattern& pattern, double radius) const {
        detail::validate_chord_args(d, radius);
        const double scale = std::exp(pattern.total() * std::log(radius));
        return {unit_value(d, pattern) * scale, pattern, d, radius};
    }

    std::size_t cache_size() const {
        std::shared_lock lock(mutex_);
        return cache_.size();
    }

private:
    double evaluate_unit(int d, const std::array<int, 4>& sorted) const {
        std::vector<int> active;
        for (int q : sorted) {
            if (q > 0) active.push_back(q);
        }
        switch (active.size()) {
        case 0: return std::exp(4.0 * ln_sphere_area(d));
        case 1: return std::exp(detail::ln_one_center(d, active));
        case 2: return std::exp(detail::ln_two_center(d, active));
        case 3: return std::exp(detail::ln_three_center(d, active));
        default: return detail::four_center_unit(d, sorted, series_);
        }
    }

    SeriesOptions series_;
    mutable std::shared_mutex mutex_;
    mutable std::map<std::pair<int, std::array<int, 4>>, double> cache_;
};

inline const ChordIntegrator& default_chord_integrator() {
    static const ChordIntegrator integrator;
    return integrator;
}

/// int r_{12}^{q1} r_{12'}^{q2} r_{1'2}^{q3} r_{1'2'}^{q4} dOmega_1 dOmega_2 dOmega_1' dOmega_2'.
inline ChordIntegralValue four_point_integral(int d, const ChordPattern& pattern, double radius,
                                              const ChordIntegrator& integrator = default_chord_integrator()) {
    return integrator.integrate(d, pattern, radius);
}

/// N = int |Psi|^2 dOmega_1 dOmega_2 = sum_{j,k} s_j s_k M_{j+k}.
inline double normalization(const SpheriumState& state) {
    const auto& s = state.coeffs;
    double total = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        for (std::size_t k = 0; k < s.size(); ++k) {
            total += s[j] * s[k] * chord_moment(state.spec.d, static_cast<int>(j + k), state.radius);
        }
    }
    return total;
}

/// Tr[(rho_1^coord)^2] = N^-2 sum_{q1..q4} s_q1 s_q2 s_q3 s_q4 I(q1, q2, q3, q4).
inline double trace_rho1_squared(const SpheriumState& state,
                                 const ChordIntegrator& integrator = default_chord_integrator()) {
    const auto& s = state.coeffs;
    const int d = state.spec.d;
    const int count = static_cast<int>(s.size());
    std::vector<double> radius_power(4 * count, 1.0);
    for (std::size_t k = 1; k < radius_power.size(); ++k) radius_power[k] = radius_power[k - 1] * state.radius;

    double total = 0.0;
    for (int a = 0; a < count; ++a) {
        for (int b = 0; b < count; ++b) {
            for (int c = 0; c < count; ++c) {
                for (int e = 0; e < count; ++e) {
                    const double weight = s[a] * s[b] * s[c] * s[e];
                    if (weight == 0.0) continue;
                    total += weight * integrator.unit_value(d, {a, b, c, e}) * radius_power[a + b + c + e];
                }
            }
        }
    }
    const double norm = normalization(state);
    return total / (norm * norm);
}

} // namespace spherium
