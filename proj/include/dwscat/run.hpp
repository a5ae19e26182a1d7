// run.hpp — configuration and data emission: turns a parameter set into CSV
// (and one compact JSON summary) files for the spectrum, Q matrix, mean-field
// phase portrait, cross-section sweeps, participation numbers, and the Born
// comparison. Re-running any command with the same configuration produces
// byte-identical files; every file header echoes the resolved configuration.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dwscat::cli {

struct RunConfig {
    std::vector<int> n_bosons{30};
    double u = 5.0;
    double hopping_k = 1.0;
    double gamma = 0.1;
    double alpha = 1.0;
    double bias = -1.0;  // negative selects the default 0.01 * k
    double band_fraction = 0.5;
    int grid_points = 2001;
    double margin = 0.05;
    double t_final = 20.0;
    double dt = 1e-3;
    unsigned long seed = 12345;
    std::string out_dir = "out";

    double resolved_bias() const { return bias < 0.0 ? 0.01 * hopping_k : bias; }
    void validate() const;  // throws std::invalid_argument with exit-code-2 semantics
};

using PathList = std::vector<std::filesystem::path>;

PathList cmd_spectrum(const RunConfig& cfg);
PathList cmd_qmatrix(const RunConfig& cfg);
PathList cmd_phasespace(const RunConfig& cfg);
PathList cmd_sweep(const RunConfig& cfg);
PathList cmd_pn(const RunConfig& cfg);
PathList cmd_born(const RunConfig& cfg);

}  // namespace dwscat::cli
