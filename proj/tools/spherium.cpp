// spherium: solve quasi-exact s-states of two electrons on a (d-1)-sphere, compute their
// entanglement, regenerate the tabulated results and run the numerical verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error, 3 numeric failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "spherium/report.hpp"
#include "spherium/spherium.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

template <class T>
std::optional<T> env_value(const char* name) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
        if constexpr (std::is_same_v<T, double>) {
            return std::stod(raw);
        } else {
            return static_cast<T>(std::stoull(raw));
        }
    } catch (const std::exception&) {
        throw spherium::DomainError(std::string("invalid value for ") + name + ": " + raw);
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw spherium::DomainError("cannot open output file " + out_path);
    file << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-exact s-states of spherium and their entanglement"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    std::string format = "csv";
    int digits = 6;
    double series_tol = 0.0;
    int max_dimension = spherium::SolveOptions{}.max_dimension;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--digits", digits, "Significant digits in output")->check(CLI::Range(1, 17))->capture_default_str();
    app.add_option("--series-tol", series_tol, "5F4 truncation tolerance (env SPHERIUM_SERIES_TOL)");
    app.add_option("--max-d", max_dimension, "Largest admissible dimension")->capture_default_str();

    // state
    auto* state_cmd = app.add_subcommand("state", "Solve one state and report R, E, coefficients, N, T and xi");
    int state_d = 3, state_n = 1, state_m = 0;
    state_cmd->add_option("--d", state_d, "Embedding dimension (electrons on S^{d-1})")->required();
    state_cmd->add_option("--n", state_n, "Polynomial degree")->required();
    state_cmd->add_option("--m", state_m, "Excitation index (node count)")->capture_default_str();
    state_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    // reproduce
    auto* reproduce_cmd = app.add_subcommand("reproduce", "Regenerate a reference table");
    std::string table_name;
    reproduce_cmd->add_option("--table", table_name, "Which table")
        ->required()
        ->check(CLI::IsMember({"coefficients", "results", "groundstate"}));
    reproduce_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Emit a figure dataset as x,y,series");
    int figure = 2;
    std::optional<int> sweep_d_max, sweep_n_max;
    std::string sweep_out;
    sweep_cmd->add_option("--fig", figure, "Figure id")->required()->check(CLI::IsMember({2, 4, 5, 6}));
    sweep_cmd->add_option("--d-max", sweep_d_max, "Largest dimension (default 6; 20 for fig 5)");
    sweep_cmd->add_option("--n-max", sweep_n_max, "Largest polynomial degree (default 6 for fig 2, else 3)");
    sweep_cmd->add_option("--out", sweep_out, "Write to this path instead of stdout");
    sweep_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    // wavegrid
    auto* grid_cmd = app.add_subcommand("wavegrid", "Normalized psi(theta1, phi1) for a fixed second electron (d = 3)");
    int grid_d = 3, grid_n = 1, grid_m = 0, grid_res = 64;
    double theta2 = 0.0, phi2 = 0.0;
    std::string grid_out;
    grid_cmd->add_option("--d", grid_d, "Embedding dimension (must be 3)")->capture_default_str();
    grid_cmd->add_option("--n", grid_n, "Polynomial degree")->capture_default_str();
    grid_cmd->add_option("--m", grid_m, "Excitation index")->capture_default_str();
    grid_cmd->add_option("--theta2", theta2, "Polar angle of electron 2")->capture_default_str();
    grid_cmd->add_option("--phi2", phi2, "Azimuth of electron 2")->capture_default_str();
    grid_cmd->add_option("--res", grid_res, "Grid points per axis")->capture_default_str();
    grid_cmd->add_option("--out", grid_out, "Write to this path instead of stdout");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Check closed forms against quadrature and Monte Carlo");
    spherium::VerifyConfig verify_config;
    std::optional<std::uint64_t> verify_seed;
    std::optional<int> quad_nodes;
    std::string verify_format = "text";
    double corrupt_factor = 1.0;
    verify_cmd->add_option("--samples", verify_config.samples, "Monte Carlo samples per case")->capture_default_str();
    verify_cmd->add_option("--four-center-samples", verify_config.four_center_samples,
                           "Samples for all-positive patterns (0: same as --samples)");
    verify_cmd->add_option("--seed", verify_seed, "RNG seed (env SPHERIUM_MC_SEED)");
    verify_cmd->add_option("--d-max", verify_config.d_max, "Largest dimension")->capture_default_str();
    verify_cmd->add_option("--q-max", verify_config.q_max, "Largest chord exponent")->capture_default_str();
    verify_cmd->add_option("--quad-nodes", quad_nodes, "Gauss-Legendre nodes (env SPHERIUM_QUAD_NODES)");
    verify_cmd->add_option("--threads", verify_config.threads, "Worker threads")->capture_default_str();
    verify_cmd->add_option("--format", verify_format, "Report format")->check(CLI::IsMember({"text", "json"}));
    verify_cmd->add_option("--corrupt-four-center", corrupt_factor)->group(""); // sensitivity test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        spherium::SeriesOptions series;
        if (series_tol > 0.0) {
            series.tol = series_tol;
        } else if (auto env = env_value<double>("SPHERIUM_SERIES_TOL")) {
            series.tol = *env;
        }
        const spherium::ChordIntegrator integrator(series);
        spherium::SolveOptions solve;
        solve.max_dimension = max_dimension;

        if (*state_cmd) {
            const auto state = spherium::solve_state({state_d, state_n, state_m}, solve);
            std::cout << spherium::render(spherium::state_table(spherium::entanglement(state, integrator)), format,
                                          digits);
        } else if (*reproduce_cmd) {
            spherium::Table table;
            if (table_name == "results") {
                table = spherium::results_table(integrator);
            } else if (table_name == "coefficients") {
                table = spherium::coefficients_table();
            } else {
                table = spherium::groundstate_table();
            }
            std::cout << spherium::render(table, format, digits);
        } else if (*sweep_cmd) {
            spherium::FigureOptions options;
            options.figure = figure;
            options.d_max = sweep_d_max.value_or(figure == 5 ? 20 : 6);
            options.n_max = sweep_n_max.value_or(figure == 2 ? 6 : 3);
            const auto table = spherium::figure_table(options, integrator);
            for (const auto& row : table.rows) {
                if (const auto* s = std::get_if<std::string>(&row[2]); s && s->starts_with("warning")) {
                    std::cerr << *s << '\n';
                }
            }
            emit(spherium::render(table, format, digits), sweep_out);
        } else if (*grid_cmd) {
            if (grid_d != 3) throw spherium::DomainError("wavegrid supports d = 3 only, got d=" + std::to_string(grid_d));
            const auto state = spherium::solve_state({grid_d, grid_n, grid_m}, solve);
            emit(spherium::to_csv(spherium::wavegrid_table(state, theta2, phi2, grid_res), digits), grid_out);
        } else if (*verify_cmd) {
            if (verify_seed) {
                verify_config.seed = *verify_seed;
            } else if (auto env = env_value<std::uint64_t>("SPHERIUM_MC_SEED")) {
                verify_config.seed = *env;
            }
            if (quad_nodes) {
                verify_config.quad_nodes = *quad_nodes;
            } else if (auto env = env_value<std::uint64_t>("SPHERIUM_QUAD_NODES")) {
                verify_config.quad_nodes = static_cast<int>(*env);
            }
            spherium::ClosedForms closed;
            closed.four_point = [&](int d, const spherium::ChordPattern& p, double r) {
                const double value = spherium::four_point_integral(d, p, r, integrator).value;
                return p.active() == 4 ? value * corrupt_factor : value;
            };
            const auto report = spherium::verify_suite(verify_config, closed);
            if (verify_format == "json") {
                std::cout << spherium::verify_json(report).dump(2) << '\n';
            } else {
                std::cout << spherium::verify_text(report);
            }
            return report.passed() ? exit_ok : exit_verify_failed;
        }
    } catch (const spherium::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const spherium::EmptySpectrumError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_ok;
}
