// Prints R, E and the singlet entanglement of the nodeless states for a few (d, n), then checks
// the d = 3, n = 1 purity against a Monte Carlo estimate.

#include <cstdio>

#include "spherium/spherium.hpp"

int main() {
    std::printf("%3s %3s %12s %12s %12s\n", "d", "n", "R", "E", "xi");
    for (int d = 3; d <= 6; ++d) {
        for (int n = 1; n <= 3; ++n) {
            const auto state = spherium::solve_state({d, n, 0});
            const auto report = spherium::entanglement(state);
            std::printf("%3d %3d %12.6g %12.6g %12.6g\n", d, n, state.radius, state.energy, report.xi_singlet);
        }
    }

    const auto ground = spherium::solve_state({3, 1, 0});
    const auto mc = spherium::mc_trace_rho1_squared(ground, 1'000'000, 7);
    std::printf("\nd=3 n=1: T closed form %.7f, Monte Carlo %.7f +- %.7f\n",
                spherium::trace_rho1_squared(ground), mc.mean, mc.std_error);
    return 0;
}
