// dwscat — command-line driver: spectrum | qmatrix | phasespace | sweep | pn | born.
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <cstdio>
#include <exception>
#include <stdexcept>

#include <CLI11.hpp>

#include "dwscat/run.hpp"

int main(int argc, char** argv) {
    dwscat::cli::RunConfig cfg;

    CLI::App app{"Inelastic matter-wave scattering on a double-well condensate"};
    app.fallthrough();
    app.set_config("--config", "", "flat key=value configuration file (flags override)");
    app.add_option("--n-bosons", cfg.n_bosons, "boson number(s) N; one output file per value")
        ->capture_default_str();
    app.add_option("--u", cfg.u, "control parameter u = U N / 2k")->capture_default_str();
    app.add_option("--hopping-k", cfg.hopping_k, "dimer tunneling strength k")
        ->capture_default_str();
    app.add_option("--gamma", cfg.gamma, "lead coupling ratio (J0/J)^2 in (0,1]")
        ->capture_default_str();
    app.add_option("--alpha", cfg.alpha, "probe-target interaction strength")
        ->capture_default_str();
    app.add_option("--bias", cfg.bias, "on-site bias; negative selects the default 0.01 k");
    app.add_option("--band-fraction", cfg.band_fraction,
                   "fraction of the lead band covered by the rescaled spectrum")
        ->capture_default_str();
    app.add_option("--grid-points", cfg.grid_points, "total-energy grid points")
        ->capture_default_str();
    app.add_option("--margin", cfg.margin, "sweep margin from the channel-closure boundaries")
        ->capture_default_str();
    app.add_option("--t-final", cfg.t_final, "mean-field integration time")
        ->capture_default_str();
    app.add_option("--dt", cfg.dt, "mean-field integration step")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for random initial conditions")
        ->capture_default_str();
    app.add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();

    auto* spectrum = app.add_subcommand("spectrum", "energy levels with classification");
    auto* qmatrix = app.add_subcommand("qmatrix", "interaction matrix Q, Q_nn and sigma_n");
    auto* phasespace = app.add_subcommand("phasespace", "mean-field trajectories");
    auto* sweep = app.add_subcommand("sweep", "inelastic cross sections over the energy grid");
    auto* pn = app.add_subcommand("pn", "energy-averaged participation numbers");
    auto* born = app.add_subcommand("born", "Born approximation vs exact cross sections");
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        dwscat::cli::PathList written;
        if (*spectrum) written = dwscat::cli::cmd_spectrum(cfg);
        else if (*qmatrix) written = dwscat::cli::cmd_qmatrix(cfg);
        else if (*phasespace) written = dwscat::cli::cmd_phasespace(cfg);
        else if (*sweep) written = dwscat::cli::cmd_sweep(cfg);
        else if (*pn) written = dwscat::cli::cmd_pn(cfg);
        else if (*born) written = dwscat::cli::cmd_born(cfg);
        for (const auto& p : written) std::printf("%s\n", p.string().c_str());
    } catch (const std::invalid_argument& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "numerical failure: %s\n", err.what());
        return 3;
    }
    return 0;
}
