#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "spherium/oracle.hpp"
#include "spherium/specfun.hpp"

namespace {

using namespace spherium;

TEST(LnGamma, KnownValues) {
    EXPECT_EQ(ln_gamma(1.0), 0.0);
    EXPECT_NEAR(ln_gamma(2.5), std::log(3.0 * std::sqrt(std::numbers::pi) / 4.0), 1e-15);
    EXPECT_NEAR(ln_gamma(2.5), 0.2846828704, 1e-10);
    EXPECT_NEAR(ln_gamma(10.0), std::log(362880.0), 1e-14 * std::log(362880.0));
}

TEST(LnGamma, MatchesHighPrecisionReference) {
    // mpmath loggamma at 30 digits
    const std::vector<std::pair<double, double>> reference = {
        {0.5, 0.57236494292470008707},
        {3.7, 1.4280723266653879219},
        {25.3, 55.746181183584590052},
        {199.5, 855.28638927345257379},
    };
    for (const auto& [x, expected] : reference) {
        EXPECT_NEAR(ln_gamma(x), expected, 1e-14 * std::abs(expected)) << "x=" << x;
    }
}

TEST(LnGamma, RejectsNonPositive) {
    EXPECT_THROW(ln_gamma(0.0), DomainError);
    EXPECT_THROW(ln_gamma(-1.5), DomainError);
}

TEST(LnGamma, FunctionalEquation) {
    for (double x = 0.5; x <= 50.5; x += 1.0) {
        const double lhs = std::exp(ln_gamma(x + 1.0));
        const double rhs = x * std::exp(ln_gamma(x));
        EXPECT_NEAR(lhs / rhs, 1.0, 1e-12) << "x=" << x;
    }
}

TEST(Pochhammer, Examples) {
    EXPECT_EQ(pochhammer(-0.5, 0), 1.0);
    EXPECT_EQ(pochhammer(-0.5, 2), -0.25);
    EXPECT_EQ(pochhammer(3.0, 3), 60.0);
}

TEST(Pochhammer, GammaRatio) {
    for (double a : {0.25, 1.0, 2.5, 7.75}) {
        for (unsigned k = 0; k < 20; ++k) {
            const double expected = std::exp(ln_gamma(a + k) - ln_gamma(a));
            EXPECT_NEAR(pochhammer(a, k) / expected, 1.0, 1e-12) << "a=" << a << " k=" << k;
        }
    }
}

TEST(Gegenbauer, LowDegrees) {
    EXPECT_EQ(gegenbauer(0, 0.5, 0.3), 1.0);
    for (double alpha : {0.5, 1.0, 2.5}) {
        for (double x : {-0.7, 0.0, 0.4}) EXPECT_DOUBLE_EQ(gegenbauer(1, alpha, x), 2.0 * alpha * x);
    }
    EXPECT_DOUBLE_EQ(gegenbauer(2, 0.5, 1.0), 1.0);
    // alpha = 1/2 gives Legendre: P3(x) = (5x^3 - 3x)/2
    EXPECT_NEAR(gegenbauer(3, 0.5, 0.3), 0.5 * (5 * 0.027 - 0.9), 1e-15);
    EXPECT_THROW(gegenbauer(2, 0.0, 0.1), DomainError);
}

TEST(Gegenbauer, OrthogonalUnderGaussLegendre) {
    const auto rule = gauss_legendre(200);
    for (double alpha : {0.5, 1.5, 2.5}) { // polynomial weight: exact under Gauss-Legendre
        for (unsigned n = 0; n <= 8; ++n) {
            for (unsigned m = 0; m < n; ++m) {
                double inner = 0.0;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    const double x = rule.nodes[i];
                    inner += rule.weights[i] * std::pow(1.0 - x * x, alpha - 0.5) * gegenbauer(n, alpha, x) *
                             gegenbauer(m, alpha, x);
                }
                EXPECT_LT(std::abs(inner), 1e-10) << "alpha=" << alpha << " n=" << n << " m=" << m;
            }
        }
    }
}

TEST(SphereArea, SmallDimensions) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(sphere_area(2), 2.0 * pi, 1e-14);
    EXPECT_NEAR(sphere_area(3), 4.0 * pi, 1e-14);
    EXPECT_NEAR(sphere_area(4), 2.0 * pi * pi, 1e-13);
    EXPECT_THROW(sphere_area(1), DomainError);
}

TEST(Hyper5F4, TerminatingSeries) {
    EXPECT_EQ(hyper_5f4_at_unity({{0.0, 1.5, 2.0, 0.5, 3.0}, {2.0, 3.0, 4.0, 5.0}}), 1.0);
    EXPECT_DOUBLE_EQ(hyper_5f4_at_unity({{-1.0, 1.0, 1.0, 1.0, 1.0}, {2.0, 1.0, 1.0, 1.0}}), 0.5);
}

TEST(Hyper5F4, MatchesHighPrecisionReference) {
    // mpmath hyper() at 30 digits
    EXPECT_NEAR(hyper_5f4_at_unity({{-0.5, -0.5, -0.5, -0.5, 1.0}, {2.5, 2.5, 2.5, 2.5}}), 1.0016006750014509548, 1e-15);
    EXPECT_NEAR(hyper_5f4_at_unity({{0.5, 0.5, 0.5, 0.5, 2.0}, {3.5, 3.5, 3.5, 3.5}}), 1.0008494005336272374, 1e-14);
}

TEST(Hyper5F4, TighterToleranceMovesResultByLessThanLastTerm) {
    const HypergeometricSpec spec{{0.5, 0.5, 0.5, 0.5, 2.0}, {3.5, 3.5, 3.5, 3.5}};
    const double loose = hyper_5f4_at_unity(spec, {1e-6});
    const double tight = hyper_5f4_at_unity(spec, {1e-15});
    EXPECT_GE(tight, loose); // all terms positive: partial sums are monotone
    EXPECT_LT(tight - loose, 1e-6 * tight * 10);
}

TEST(Hyper5F4, RejectsDivergentOrDegenerateParameters) {
    EXPECT_THROW(hyper_5f4_at_unity({{1.0, 1.0, 1.0, 1.0, 1.0}, {1.0, 1.0, 1.0, 1.0}}), DomainError);
    EXPECT_THROW(hyper_5f4_at_unity({{0.5, 0.5, 0.5, 0.5, 1.0}, {-2.0, 9.0, 9.0, 9.0}}), DomainError);
}

TEST(Hyper5F4, IterationCapReportsConvergenceError) {
    // margin 0.5: terms decay like k^-1.5, far too slowly for 10 terms at tol 1e-15
    const HypergeometricSpec spec{{0.5, 0.5, 0.5, 0.5, 1.0}, {1.0, 1.0, 1.0, 1.0}};
    try {
        hyper_5f4_at_unity(spec, {1e-15, 10});
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_GT(e.last_term(), 0.0);
    }
}

} // namespace
