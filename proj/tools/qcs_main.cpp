#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcs/cli.hpp"

namespace {

void add_physics_flags(CLI::App& cmd, qcs::RunConfig& cfg) {
    auto* q_opt = cmd.add_option("--q", cfg.q, "deformation parameter, 0 < q <= 1");
    auto* tau_opt = cmd.add_option("--tau", cfg.tau, "deformation exponent, q = exp(-tau)");
    q_opt->excludes(tau_opt);
    tau_opt->excludes(q_opt);
    cmd.add_option("--J", cfg.action, "action label of the state")->capture_default_str();
    cmd.add_option("--hbar", cfg.hbar, "reduced Planck constant")->capture_default_str();
    cmd.add_option("--mass", cfg.mass, "oscillator mass")->capture_default_str();
    cmd.add_option("--omega", cfg.omega, "oscillator angular frequency")->capture_default_str();
    cmd.add_option("--tol", cfg.tol, "series tail tolerance")->capture_default_str();
    cmd.add_option("--n-max", cfg.n_max, "series term cap")->capture_default_str();
}

void add_range_flags(CLI::App& cmd, qcs::RunConfig& cfg) {
    cmd.add_option("--t-min", cfg.t_min, "scan start time")->capture_default_str();
    cmd.add_option("--t-max", cfg.t_max, "scan end time (default: three classical periods)");
    cmd.add_option("--steps", cfg.steps, "number of scan points")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-deformed oscillator coherent states: expectation values, "
                 "uncertainty relations, and revival-time scans"};
    app.require_subcommand(1);

    qcs::RunConfig cfg;
    std::function<int()> body;

    auto* verify = app.add_subcommand("verify", "run the full invariant suite");
    add_physics_flags(*verify, cfg);
    verify->add_option("--out", cfg.out_path, "write the pass/fail table to a file");
    verify->callback([&] { body = [&] { return qcs::cli::cmd_verify(cfg, std::cout); }; });

    auto* uncertainty =
        app.add_subcommand("uncertainty", "scan the generalized uncertainty relation over time");
    add_physics_flags(*uncertainty, cfg);
    add_range_flags(*uncertainty, cfg);
    uncertainty->add_option("--gamma", cfg.gamma, "initial angle")->capture_default_str();
    uncertainty->add_option("--out", cfg.out_path, "CSV output path (default: stdout)");
    uncertainty->add_option("--svg", cfg.svg_path, "also render the ratio column as SVG");
    uncertainty->callback(
        [&] { body = [&] { return qcs::cli::cmd_uncertainty(cfg, std::cout); }; });

    auto* autocorr = app.add_subcommand("autocorr", "scan the autocorrelation function over time");
    add_physics_flags(*autocorr, cfg);
    add_range_flags(*autocorr, cfg);
    autocorr->add_option("--out", cfg.out_path, "CSV output path (default: stdout)");
    autocorr->add_option("--svg", cfg.svg_path, "also render the abs2 column as SVG");
    autocorr->callback([&] { body = [&] { return qcs::cli::cmd_autocorr(cfg, std::cout); }; });

    auto* revival = app.add_subcommand("revival-times",
                                       "print n_bar and the classical/revival/superrevival times");
    add_physics_flags(*revival, cfg);
    revival->add_option("--out", cfg.out_path, "output path (default: stdout)");
    revival->callback([&] { body = [&] { return qcs::cli::cmd_revival_times(cfg, std::cout); }; });

    auto* expect = app.add_subcommand("expect", "print all closed-form expectation values");
    add_physics_flags(*expect, cfg);
    expect->add_option("--gamma", cfg.gamma, "angle of the state")->capture_default_str();
    expect->add_option("--out", cfg.out_path, "output path (default: stdout)");
    expect->callback([&] { body = [&] { return qcs::cli::cmd_expect(cfg, std::cout); }; });

    auto* plot = app.add_subcommand("plot", "render a column of a scan CSV as an SVG line plot");
    plot->add_option("--csv", cfg.csv_path, "input CSV path")->required();
    plot->add_option("--column", cfg.column, "column to plot")->capture_default_str();
    plot->add_option("--svg", cfg.svg_path, "output SVG path")->required();
    plot->callback([&] { body = [&] { return qcs::cli::cmd_plot(cfg, std::cout); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return 2;
    }

    return qcs::cli::run_mapped(body, std::cerr);
}
