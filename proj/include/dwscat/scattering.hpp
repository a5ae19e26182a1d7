// scattering.hpp — transmission block of the probe-particle S-matrix on a
// tight-binding lead coupled to the dimer, evaluated channel-exactly at fixed
// total energy after rescaling the target spectrum into the lead band.
//
// Channels follow the lead dispersion eps = -2J cos(k), v = 2J sin(k). With
// the spectrum mapped to E'_n = s (E_n - c) and the interaction operator
// scaled by the same factor s, the transmission block at total energy E is
//   S_T = sqrt(v) (i gamma) M^-1 sqrt(v),
//   M   = (1-gamma) diag(E - E'_n) - s alpha Q + i gamma diag(v_n),
// which satisfies the flux identity 2 S^+ S = S + S^+ whenever every channel
// is open.

#pragma once

#include <vector>

#include "dwscat/bose_hubbard.hpp"
#include "dwscat/linalg.hpp"

namespace dwscat::scattering {

struct LeadParams {
    double hopping = 1.0;  // J, fixes the lead energy unit (lattice spacing 1)
    double gamma = 0.1;    // (J0/J)^2 in (0, 1]

    void validate() const;  // throws std::invalid_argument
};

struct RescaledTarget {
    LeadParams lead;
    std::vector<double> energies;  // E'_n, centered on 0, spanning beta * 4J
    double scale = 1.0;            // s, also applied to the interaction operator
    double center = 0.0;           // c, midpoint of the raw spectrum
    double band_fraction = 0.5;    // beta

    std::size_t channel_count() const { return energies.size(); }
    // Total energies with every channel open: (max E' - 2J, min E' + 2J).
    double open_lo() const;
    double open_hi() const;
};

struct ChannelSet {
    double total_energy = 0.0;
    std::vector<double> kinetic;     // eps_n = E - E'_n
    std::vector<double> wavenumber;  // k_n = arccos(-eps_n / 2J) in (0, pi)
    std::vector<double> velocity;    // v_n = 2J sin(k_n) > 0
    std::vector<bool> open;          // all true on successful construction
};

struct SMatrixBlock {
    double total_energy = 0.0;
    linalg::ComplexMatrix s;  // (N+1) x (N+1)
};

struct EnergyGrid {
    double lo = 0.0;
    double hi = 0.0;
    int points = 1;

    double at(int i) const;
    void validate() const;
};

struct SweepResult {
    std::vector<double> energies;
    std::size_t channels = 0;
    double alpha = 0.0;
    bool has_pn = false;
    std::vector<double> rho;  // [m * points + i]
    std::vector<double> pn;   // [m * points + i], only if has_pn
    std::vector<int> resonance_index;      // argmax_i rho(m, i), lowest on ties
    std::vector<double> resonance_energy;  // grid energy at the argmax
    std::vector<double> peak_rho;
    std::vector<double> pn_avg;  // arithmetic mean over the grid

    double rho_at(std::size_t m, int i) const { return rho[m * energies.size() + i]; }
    double pn_at(std::size_t m, int i) const { return pn[m * energies.size() + i]; }
};

RescaledTarget rescale(const bh::EigenSystem& es, const LeadParams& lead, double band_fraction);

// Kinematics at fixed total energy; throws naming the first closed channel,
// since the artifact never evaluates S_T with evanescent modes.
ChannelSet channels(const RescaledTarget& rt, double total_energy);

SMatrixBlock s_matrix(const RescaledTarget& rt, const bh::QMatrix& q, double alpha,
                      double total_energy);

// rho_in^m = 2 sum_{n != m} |S_nm|^2, summed in ascending n.
double inelastic_cross_section(const SMatrixBlock& block, std::size_t m);

// PN(m) = [sum_{n != m} |S_nm|^4 / (sum_{n != m} |S_nm|^2)^2]^-1 in [1, N].
double participation_number(const SMatrixBlock& block, std::size_t m);

// Max-norm defect of the flux identity 2 S^+ S - S - S^+.
double flux_identity_defect(const SMatrixBlock& block);

// Uniform grid over the open window shrunk by margin * J on each side.
EnergyGrid default_grid(const RescaledTarget& rt, double margin, int points);

// Evaluates rho_in (and optionally PN) over the grid; grid points are
// independent and may be computed concurrently, results merged in grid order.
SweepResult sweep(const RescaledTarget& rt, const bh::QMatrix& q, double alpha,
                  const EnergyGrid& grid, bool with_pn = true, int threads = 0);

}  // namespace dwscat::scattering
