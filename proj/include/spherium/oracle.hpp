#pragma once

// Independent numerical checks of the closed forms: uniform sampling on spheres, chunked
// Monte Carlo with deterministic per-chunk streams, and Gauss-Legendre quadrature of the
// single-chord angular integral.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "spherium/chords.hpp"
#include "spherium/errors.hpp"
#include "spherium/specfun.hpp"
#include "spherium/states.hpp"

namespace spherium {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0; ///< sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t mc_chunk_size = std::uint64_t{1} << 16;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Count, mean and sum of squared deviations; merged in a fixed order for reproducibility.
struct RunningStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const RunningStats& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double total = static_cast<double>(count + other.count);
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.count) / total;
        m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) / total;
        count += other.count;
    }
};

} // namespace detail

/// Generator for chunk `chunk` of a run seeded with `seed`.
inline std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
    return std::mt19937_64(detail::splitmix64(detail::splitmix64(seed) ^ detail::splitmix64(~chunk)));
}

/// Writes a point uniformly distributed on the sphere of radius R in R^{out.size()}.
template <class Engine>
void sample_sphere_into(std::span<double> out, double radius, Engine& engine,
                        std::normal_distribution<double>& normal) {
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double& x : out) {
            x = normal(engine);
            norm2 += x * x;
        }
    } while (norm2 < 1e-300);
    const double scale = radius / std::sqrt(norm2);
    for (double& x : out) x *= scale;
}

template <class Engine>
std::vector<double> sample_sphere(int d, double radius, Engine& engine) {
    if (d < 2) throw DomainError("sample_sphere: d must be >= 2");
    if (!(radius > 0.0)) throw DomainError("sample_sphere: radius must be positive");
    std::vector<double> x(d);
    std::normal_distribution<double> normal;
    sample_sphere_into(std::span<double>(x), radius, engine, normal);
    return x;
}

/// Mean and standard error of `sampler(engine)` over `samples` draws. Draws are split in chunks
/// of mc_chunk_size, each with its own engine, and chunk statistics are merged in chunk order:
/// the result depends on (seed, samples) only, not on `threads`.
/// `make_sampler()` must return a fresh callable per chunk (it may hold scratch buffers).
template <class SamplerFactory>
MCEstimate monte_carlo(std::uint64_t samples, std::uint64_t seed, unsigned threads, SamplerFactory make_sampler) {
    if (samples == 0) throw DomainError("monte_carlo: at least one sample is required");
    const std::uint64_t chunks = (samples + mc_chunk_size - 1) / mc_chunk_size;
    std::vector<detail::RunningStats> stats(chunks);
    auto run_chunk = [&](std::uint64_t chunk) {
        auto engine = chunk_engine(seed, chunk);
        auto sampler = make_sampler();
        const std::uint64_t first = chunk * mc_chunk_size;
        const std::uint64_t count = std::min(mc_chunk_size, samples - first);
        detail::RunningStats local;
        for (std::uint64_t i = 0; i < count; ++i) local.push(sampler(engine));
        stats[chunk] = local;
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    if (workers == 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t c = w; c < chunks; c += workers) run_chunk(c);
            });
        }
    }
    detail::RunningStats total;
    for (const auto& s : stats) total.merge(s);
    MCEstimate estimate;
    estimate.mean = total.mean;
    estimate.samples = samples;
    estimate.seed = seed;
    estimate.std_error = samples > 1 ? std::sqrt(total.m2 / static_cast<double>(samples - 1) / samples) : 0.0;
    return estimate;
}

namespace detail {

inline double distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

inline double int_power(double x, int q) {
    double result = 1.0;
    for (int i = 0; i < q; ++i) result *= x;
    return result;
}

/// Four uniform points 1, 2, 1', 2' and their four cycle chords.
struct FourPointSampler {
    FourPointSampler(int dim, double r) : d(dim), radius(r), buffer(4 * static_cast<std::size_t>(dim)) {}

    int d;
    double radius;
    std::vector<double> buffer;
    std::normal_distribution<double> normal;

    /// {r12, r12', r1'2, r1'2'}
    template <class Engine>
    std::array<double, 4> chords(Engine& engine) {
        std::span<double> all(buffer);
        const std::size_t n = static_cast<std::size_t>(d);
        for (std::size_t p = 0; p < 4; ++p) sample_sphere_into(all.subspan(p * n, n), radius, engine, normal);
        const auto x1 = all.subspan(0, n), x2 = all.subspan(n, n), x1p = all.subspan(2 * n, n),
                   x2p = all.subspan(3 * n, n);
        return {distance(x1, x2), distance(x1, x2p), distance(x1p, x2), distance(x1p, x2p)};
    }
};

inline void require_mc_samples(std::uint64_t samples) {
    if (samples < 10'000) throw DomainError("Monte Carlo oracle needs at least 10^4 samples");
}

} // namespace detail

/// Estimate of int prod_i r_i^{q_i} dOmega^4 = Omega_d^4 E[prod_i r_i^{q_i}].
inline MCEstimate mc_four_point(int d, const ChordPattern& pattern, double radius, std::uint64_t samples,
                                std::uint64_t seed, unsigned threads = 1) {
    detail::validate_chord_args(d, radius);
    detail::require_mc_samples(samples);
    const auto q = pattern.powers();
    auto estimate = monte_carlo(samples, seed, threads, [&] {
        return [sampler = detail::FourPointSampler(d, radius), q](auto& engine) mutable {
            const auto r = sampler.chords(engine);
            return detail::int_power(r[0], q[0]) * detail::int_power(r[1], q[1]) * detail::int_power(r[2], q[2]) *
                   detail::int_power(r[3], q[3]);
        };
    });
    const double volume = std::exp(4.0 * ln_sphere_area(d));
    estimate.mean *= volume;
    estimate.std_error *= volume;
    return estimate;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline QuadratureRule gauss_legendre(int count) {
    if (count < 1) throw DomainError("gauss_legendre: need at least one node");
    QuadratureRule rule{std::vector<double>(count), std::vector<double>(count)};
    const int half = (count + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        double derivative = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= count; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
            }
            derivative = count * (x * p0 - p1) / (x * x - 1.0);
            const double step = p0 / derivative;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[count - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        rule.weights[i] = w;
        rule.weights[count - 1 - i] = w;
    }
    return rule;
}

namespace detail {

/// Omega_d Omega_{d-1} int_0^pi f(2R sin(theta/2)) sin^{d-2}(theta) dtheta.
template <class ChordFunction>
double quad_pair_integral(int d, double radius, int nodes, ChordFunction f) {
    if (nodes < 32) throw DomainError("quadrature oracle needs at least 32 nodes");
    validate_chord_args(d, radius);
    const auto rule = gauss_legendre(nodes);
    const double half_pi = 0.5 * std::numbers::pi;
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double theta = half_pi * (rule.nodes[i] + 1.0);
        sum += rule.weights[i] * f(2.0 * radius * std::sin(0.5 * theta)) * int_power(std::sin(theta), d - 2);
    }
    return std::exp(ln_sphere_area(d) + ln_sphere_area(d - 1)) * half_pi * sum;
}

} // namespace detail

/// Single-chord moment int r_{12}^q dOmega_1 dOmega_2 by Gauss-Legendre quadrature over the
/// relative angle.
inline double quad_chord_moment(int d, int q, double radius, int nodes = 128) {
    detail::validate_power(q);
    return detail::quad_pair_integral(d, radius, nodes, [q](double u) { return detail::int_power(u, q); });
}

/// int |Psi|^2 dOmega_1 dOmega_2 by quadrature.
inline double quad_normalization(const SpheriumState& state, int nodes = 128) {
    return detail::quad_pair_integral(state.spec.d, state.radius, nodes, [&](double u) {
        const double psi = detail::horner(state.coeffs, u);
        return psi * psi;
    });
}

/// int |Psi|^2 dOmega_1 dOmega_2 by Monte Carlo over two points.
inline MCEstimate mc_normalization(const SpheriumState& state, std::uint64_t samples, std::uint64_t seed,
                                   unsigned threads = 1) {
    detail::require_mc_samples(samples);
    const int d = state.spec.d;
    auto estimate = monte_carlo(samples, seed, threads, [&] {
        return [&state, d, buffer = std::vector<double>(2 * static_cast<std::size_t>(d)),
                normal = std::normal_distribution<double>()](auto& engine) mutable {
            std::span<double> all(buffer);
            sample_sphere_into(all.first(d), state.radius, engine, normal);
            sample_sphere_into(all.last(d), state.radius, engine, normal);
            const double psi = detail::horner(state.coeffs, detail::distance(all.first(d), all.last(d)));
            return psi * psi;
        };
    });
    const double volume = std::exp(2.0 * ln_sphere_area(d));
    estimate.mean *= volume;
    estimate.std_error *= volume;
    return estimate;
}

/// Tr[(rho_1^coord)^2] with the four-point integral by Monte Carlo and the normalization by
/// quadrature; no closed-form chord integral is involved.
inline MCEstimate mc_trace_rho1_squared(const SpheriumState& state, std::uint64_t samples, std::uint64_t seed,
                                        unsigned threads = 1, int quad_nodes = 128) {
    detail::require_mc_samples(samples);
    const int d = state.spec.d;
    auto estimate = monte_carlo(samples, seed, threads, [&] {
        return [&state, sampler = detail::FourPointSampler(d, state.radius)](auto& engine) mutable {
            const auto r = sampler.chords(engine);
            double product = 1.0;
            for (double u : r) product *= detail::horner(state.coeffs, u);
            return product;
        };
    });
    const double norm = quad_normalization(state, quad_nodes);
    const double scale = std::exp(4.0 * ln_sphere_area(d)) / (norm * norm);
    estimate.mean *= scale;
    estimate.std_error *= scale;
    return estimate;
}

// ---------------------------------------------------------------------------------------------
// Verification suite

struct VerifyConfig {
    int d_min = 3;
    int d_max = 6;
    int q_max = 3;
    std::uint64_t samples = 1'000'000;
    std::uint64_t four_center_samples = 0; ///< 0: same as `samples`
    std::uint64_t seed = 12345;
    int quad_nodes = 128;
    double radius = 1.0;
    unsigned threads = 1;
};

/// Closed forms under test; replaceable so the suite's sensitivity can itself be tested.
struct ClosedForms {
    std::function<double(int, const ChordPattern&, double)> four_point = [](int d, const ChordPattern& p, double r) {
        return four_point_integral(d, p, r).value;
    };
    std::function<double(int, int, double)> moment = [](int d, int q, double r) { return chord_moment(d, q, r); };
};

enum class CaseStatus { pass, warn, fail };

inline const char* to_string(CaseStatus s) {
    switch (s) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::warn: return "warn";
    default: return "fail";
    }
}

struct VerifyCase {
    std::string kind; ///< "quadrature" or "monte-carlo"
    int d = 0;
    ChordPattern pattern; ///< for quadrature cases only q1 is used
    double analytic = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double z = 0.0;         ///< MC cases
    double rel_delta = 0.0; ///< |estimate - analytic| / |analytic|
    std::uint64_t samples = 0;
    CaseStatus status = CaseStatus::pass;
    std::string error;
};

struct VerifyReport {
    VerifyConfig config;
    std::vector<VerifyCase> cases;

    bool passed() const {
        return std::none_of(cases.begin(), cases.end(), [](const auto& c) { return c.status == CaseStatus::fail; });
    }
};

inline constexpr double quad_rel_tolerance = 1e-10;
inline constexpr double z_pass = 3.0;
inline constexpr double z_fail = 4.0;

/// Chord patterns covering every zero-pattern class (0..4 active chords; two active chords both
/// adjacent and disjoint) with exponents: all ones, all q_max, and a mixed ramp.
inline std::vector<ChordPattern> canonical_patterns(int q_max) {
    using Slots = std::vector<int>;
    const std::vector<Slots> classes = {{0}, {0, 1}, {0, 3}, {0, 1, 2}, {0, 1, 2, 3}}; // single, adjacent, disjoint, path, cycle
    std::vector<ChordPattern> patterns{{0, 0, 0, 0}};
    auto add = [&](const ChordPattern& p) {
        if (std::find(patterns.begin(), patterns.end(), p) == patterns.end()) patterns.push_back(p);
    };
    for (const auto& slots : classes) {
        for (int variant = 0; variant < 3; ++variant) {
            std::array<int, 4> q{};
            for (std::size_t i = 0; i < slots.size(); ++i) {
                q[slots[i]] = variant == 0 ? 1 : variant == 1 ? q_max : static_cast<int>(i) % q_max + 1;
            }
            add({q[0], q[1], q[2], q[3]});
        }
    }
    return patterns;
}

inline VerifyReport verify_suite(const VerifyConfig& config, const ClosedForms& closed = {}) {
    VerifyReport report{config, {}};
    for (int d = config.d_min; d <= config.d_max; ++d) {
        for (int q = 0; q <= config.q_max; ++q) {
            VerifyCase c;
            c.kind = "quadrature";
            c.d = d;
            c.pattern = {q, 0, 0, 0};
            try {
                c.analytic = closed.moment(d, q, config.radius);
                c.estimate = quad_chord_moment(d, q, config.radius, config.quad_nodes);
                c.rel_delta = std::abs(c.estimate - c.analytic) / std::abs(c.analytic);
                c.status = c.rel_delta <= quad_rel_tolerance ? CaseStatus::pass : CaseStatus::fail;
            } catch (const std::exception& e) {
                c.status = CaseStatus::fail;
                c.error = e.what();
            }
            report.cases.push_back(std::move(c));
        }
    }
    for (int d = config.d_min; d <= config.d_max; ++d) {
        for (const auto& pattern : canonical_patterns(config.q_max)) {
            VerifyCase c;
            c.kind = "monte-carlo";
            c.d = d;
            c.pattern = pattern;
            try {
                const bool cycle = pattern.active() == 4;
                c.samples = cycle && config.four_center_samples > 0 ? config.four_center_samples : config.samples;
                c.analytic = closed.four_point(d, pattern, config.radius);
                const auto mc = mc_four_point(d, pattern, config.radius, c.samples, config.seed, config.threads);
                c.estimate = mc.mean;
                c.std_error = mc.std_error;
                c.rel_delta = std::abs(c.estimate - c.analytic) / std::abs(c.analytic);
                const double spread = std::max(mc.std_error, 1e-12 * std::abs(c.analytic));
                c.z = (c.estimate - c.analytic) / spread;
                c.status = std::abs(c.z) <= z_pass   ? CaseStatus::pass
                           : std::abs(c.z) <= z_fail ? CaseStatus::warn
                                                     : CaseStatus::fail;
            } catch (const std::exception& e) {
                c.status = CaseStatus::fail;
                c.error = e.what();
            }
            report.cases.push_back(std::move(c));
        }
    }
    return report;
}

} // namespace spherium
