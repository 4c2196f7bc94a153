#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "spherium/states.hpp"

namespace {

using namespace spherium;

double single_root(const Polynomial& p) {
    EXPECT_EQ(p.size(), 2u);
    return -p[0] / p[1];
}

// Closed forms for s_2 (n = 2 ground state) and s_3 (n = 3 ground state), test-only oracle.
double closed_form_s2(double d) { return (1.0 - 2.0 * d) / (-8.0 * d * d * d + 34.0 * d * d - 46.0 * d + 20.0); }

double closed_form_s3(double d) {
    const double radicand = (d * (d * (64.0 * (d - 2.0) * d + 169.0) - 78.0) + 9.0) /
                            (d * d * std::pow(d * (3.0 - 2.0 * d) + 2.0, 2));
    return (-5520.0 / ((d - 2.0) * (d - 2.0)) - 5400.0 / (d - 1.0) + 1600.0 / (1.0 - 2.0 * d) + 2393.0 / (d - 2.0) -
            4050.0 / (d * d) + 24975.0 / d - 42336.0 / (2.0 * d + 1.0) +
            900.0 * (d * (14.0 * d - 23.0) + 6.0) * std::sqrt(radicand) /
                ((d - 2.0) * (d - 1.0) * d * (2.0 * d - 1.0))) /
           48600.0;
}

TEST(EnergyPolynomial, LinearCases) {
    EXPECT_NEAR(single_root(energy_polynomial(3, 1)), 1.0, 1e-15);
    EXPECT_NEAR(single_root(energy_polynomial(4, 1)), 0.5, 1e-15);
    EXPECT_NEAR(single_root(energy_polynomial(3, 2)), 2.0 / 7.0, 1e-15);
}

TEST(EnergyPolynomial, DegreeIsFloorHalfNPlusOne) {
    for (int d = 3; d <= 8; ++d) {
        for (int n = 1; n <= 9; ++n) {
            EXPECT_EQ(static_cast<int>(energy_polynomial(d, n).size()) - 1, (n + 1) / 2) << "d=" << d << " n=" << n;
        }
    }
}

TEST(EnergyPolynomial, RejectsInvalidArguments) {
    EXPECT_THROW(energy_polynomial(2, 1), DomainError);
    EXPECT_THROW(energy_polynomial(3, 0), DomainError);
    EXPECT_THROW(energy_polynomial(31, 1), DomainError);
    EXPECT_NO_THROW(energy_polynomial(31, 1, SolveOptions{40}));
}

TEST(SolveStates, TabulatedStates) {
    const auto n3 = solve_states(3, 3);
    ASSERT_EQ(n3.size(), 2u);
    EXPECT_NEAR(n3[0].energy, 0.127128, 1e-6);
    EXPECT_NEAR(n3[0].radius, 5.43118, 1e-5);
    EXPECT_EQ(n3[0].spec.m, 0);
    EXPECT_EQ(n3[1].spec.m, 1);
    EXPECT_GT(n3[1].energy, n3[0].energy);

    const auto d6 = solve_states(6, 2);
    ASSERT_EQ(d6.size(), 1u);
    EXPECT_NEAR(d6[0].energy, 0.105263, 1e-6);
    EXPECT_NEAR(d6[0].radius, 6.89202, 1e-5);

    const auto d5 = solve_states(5, 1);
    ASSERT_EQ(d5.size(), 1u);
    EXPECT_NEAR(d5[0].energy, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(d5[0].radius, 2.29129, 1e-5);
    EXPECT_NEAR(d5[0].coeffs[1], 1.0 / 3.0, 1e-15);
}

TEST(SolveStates, InvariantsHoldForEveryState) {
    for (int d = 3; d <= 8; ++d) {
        for (int n = 1; n <= 8; ++n) {
            const auto states = solve_states(d, n);
            for (std::size_t i = 0; i < states.size(); ++i) {
                const auto& st = states[i];
                SCOPED_TRACE(testing::Message() << "d=" << d << " n=" << n << " m=" << i);
                EXPECT_EQ(st.spec.m, static_cast<int>(i));
                EXPECT_GT(st.energy, 0.0);
                EXPECT_GT(st.radius, 0.0);
                EXPECT_EQ(st.coeffs[0], 1.0);
                EXPECT_EQ(st.coeffs[1], 1.0 / (d - 2.0));
                const double target = 0.25 * n * (n + 2.0 * d - 4.0);
                EXPECT_NEAR(st.radius * st.radius * st.energy, target, 1e-12 * target);

                const auto extended = recurrence_coefficients(d, st.energy, st.radius, n + 2);
                double scale = 0.0;
                for (int k = 0; k <= n; ++k) scale = std::max(scale, std::abs(extended[k]));
                EXPECT_LE(std::abs(extended[n + 1]), 1e-9 * scale);

                EXPECT_EQ(static_cast<int>(wavefunction_nodes(st).size()), st.spec.m);
            }
        }
    }
}

TEST(SolveStates, GroundStateRadiusFromDeltaGamma) {
    for (int d = 3; d <= 12; ++d) {
        const auto st = solve_state({d, 1, 0});
        const double delta = 2.0 * d - 3.0, gamma = 1.0 / (d - 2.0);
        EXPECT_NEAR(st.radius * st.radius, delta / (4.0 * gamma), 1e-12 * delta / gamma);
        EXPECT_NEAR(st.energy, gamma, 1e-14);
    }
    EXPECT_NEAR(solve_state({3, 1, 0}).radius, std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(SolveStates, ExcitedStatesAppearFromNThree) {
    for (int d = 3; d <= 6; ++d) {
        EXPECT_EQ(solve_states(d, 1).size(), 1u);
        EXPECT_EQ(solve_states(d, 2).size(), 1u);
        EXPECT_EQ(solve_states(d, 3).size(), 2u);
    }
    EXPECT_THROW(solve_state({3, 2, 1}), DomainError);
    EXPECT_THROW(solve_state({3, 2, -1}), DomainError);
}

TEST(Coefficients, TabulatedValues) {
    EXPECT_NEAR(solve_state({3, 2, 0}).coeffs[2], 0.178571, 1e-6);
    EXPECT_NEAR(solve_state({3, 2, 0}).coeffs[2], 5.0 / 28.0, 1e-15);
    EXPECT_NEAR(solve_state({4, 3, 0}).coeffs[3], 0.002703, 1e-6);
    const auto ground = solve_state({3, 1, 0});
    EXPECT_EQ(coefficients(ground), (std::vector<double>{1.0, 1.0}));
}

TEST(Coefficients, AgreeWithClosedForms) {
    for (int d = 3; d <= 6; ++d) {
        const double s2 = solve_state({d, 2, 0}).coeffs[2];
        const double s3 = solve_state({d, 3, 0}).coeffs[3];
        EXPECT_NEAR(s2, closed_form_s2(d), 1e-9 * std::abs(s2)) << "d=" << d;
        EXPECT_NEAR(s3, closed_form_s3(d), 1e-9 * std::abs(s3)) << "d=" << d;
    }
}

TEST(Wavefunction, HornerEvaluation) {
    const auto n1 = solve_state({3, 1, 0});
    EXPECT_EQ(eval_wavefunction(n1, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(eval_wavefunction(n1, 1.0), 2.0);
    const auto n2 = solve_state({3, 2, 0});
    EXPECT_NEAR(eval_wavefunction(n2, 1.0), 2.178571, 1e-6);
}

TEST(Wavefunction, RejectsChordsLongerThanDiameter) {
    const auto st = solve_state({3, 1, 0});
    EXPECT_THROW(eval_wavefunction(st, -0.1), DomainError);
    EXPECT_THROW(eval_wavefunction(st, 2.0 * st.radius * 1.01), DomainError);
    EXPECT_NO_THROW(eval_wavefunction(st, 2.0 * st.radius));
}

TEST(Wavefunction, AngleParameterization) {
    const double pi = std::numbers::pi;
    const auto st = solve_state({3, 1, 0});
    EXPECT_NEAR(eval_wavefunction_angles(st, 0.7, 1.3, 0.7, 1.3), 1.0, 1e-7);
    EXPECT_NEAR(eval_wavefunction_angles(st, 0.0, 0.0, pi, 0.0), 1.0 + 2.0 * st.radius, 1e-12);
    EXPECT_NEAR(eval_wavefunction_angles(st, pi / 2, 0.0, pi / 2, pi / 2), 1.0 + st.radius * std::sqrt(2.0), 1e-12);
}

TEST(Wavefunction, GeneralDimensionAngles) {
    const double pi = std::numbers::pi;
    const auto st = solve_state({5, 1, 0});
    const SphereAngles pole{{0.0, 0.0, 0.0}, 0.0};
    const SphereAngles equator{{pi / 2, pi / 2, pi / 2}, 0.3};
    const SphereAngles antipode{{pi, 0.0, 0.0}, 0.0};
    EXPECT_NEAR(eval_wavefunction_angles(st, pole, equator), 1.0 + st.coeffs[1] * st.radius * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(eval_wavefunction_angles(st, pole, antipode), 1.0 + st.coeffs[1] * 2.0 * st.radius, 1e-12);
    EXPECT_THROW(eval_wavefunction_angles(st, SphereAngles{{0.1}, 0.0}, SphereAngles{{0.1}, 0.0}), DomainError);

    const auto unit = to_unit_vector({{0.4, 1.1, 2.0}, 4.0});
    double norm = 0.0;
    for (double x : unit) norm += x * x;
    EXPECT_NEAR(norm, 1.0, 1e-15);
}

TEST(OdeResidual, GroundStateIsExact) {
    const auto st = solve_state({3, 1, 0});
    EXPECT_LT(std::abs(ode_residual(st, 0.5)), 1e-12);
}

TEST(OdeResidual, RecurrenceStatesAreExact) {
    const auto st = solve_state({4, 2, 0});
    for (double fraction : {0.1, 1.0, 1.9}) {
        EXPECT_LT(std::abs(ode_residual(st, fraction * st.radius)), 1e-9) << fraction;
    }
    EXPECT_THROW(ode_residual(st, 0.0), DomainError);
    EXPECT_THROW(ode_residual(st, 2.0 * st.radius), DomainError);
}

TEST(OdeResidual, LinearInEnergyPerturbation) {
    auto st = solve_state({3, 2, 0});
    const double u = 0.8 * st.radius;
    const double psi = eval_wavefunction(st, u);
    st.energy += 1e-3;
    EXPECT_NEAR(ode_residual(st, u), -1e-3 * psi, 1e-9 * std::abs(psi));
}

TEST(OdeResidual, VanishesOnGridForAllSmallStates) {
    for (int d = 3; d <= 6; ++d) {
        for (int n = 1; n <= 6; ++n) {
            for (const auto& st : solve_states(d, n)) {
                for (int i = 0; i < 100; ++i) {
                    const double u = 2.0 * st.radius * (0.01 + 0.98 * i / 99.0);
                    const double psi = eval_wavefunction(st, u);
                    EXPECT_LT(std::abs(ode_residual(st, u)), 1e-9 * std::max(1.0, std::abs(psi)))
                        << "d=" << d << " n=" << n << " m=" << st.spec.m << " u=" << u;
                }
            }
        }
    }
}

TEST(Nodes, ExcitedStateHasOneNode) {
    const auto excited = solve_state({3, 3, 1});
    const auto nodes = wavefunction_nodes(excited);
    ASSERT_EQ(nodes.size(), 1u);
    EXPECT_GT(nodes[0], 0.0);
    EXPECT_LT(nodes[0], 2.0 * excited.radius);
    EXPECT_NEAR(eval_wavefunction(excited, nodes[0]), 0.0, 1e-12);
}

} // namespace
