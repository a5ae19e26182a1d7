// born.hpp — first-order Born approximation of the transmission block and the
// closed-form inelastic cross section, for validation against the exact solve.
//
// The diagonal of Q is absorbed into the unperturbed resolvent,
//   [S_D]_nn = i gamma v_n / ((1-gamma)(E - E'_n) - s alpha Q_nn + i gamma v_n),
// and the off-diagonal remainder enters through
//   B = S_D v^-1/2 Qbar v^-1/2 S_D,   S_Born = S_D - i kappa B,
// with kappa = s alpha / gamma. All formulas consume the rescaled spectrum and
// interaction so they are comparable point-for-point with the exact solve.

#pragma once

#include <vector>

#include "dwscat/bose_hubbard.hpp"
#include "dwscat/linalg.hpp"
#include "dwscat/scattering.hpp"

namespace dwscat::born {

struct BornOperators {
    double kappa = 0.0;                    // s alpha / gamma
    std::vector<double> q_diag;            // Qtilde (diagonal of Q)
    linalg::RealMatrix q_offdiag;          // Qbar = Q - Qtilde
    std::vector<linalg::cplx> s_d;         // diagonal resolvent term
    linalg::ComplexMatrix b;               // rescaled perturbation operator
    double total_energy = 0.0;
};

BornOperators born_operators(const scattering::RescaledTarget& rt, const bh::QMatrix& q,
                             double alpha, double total_energy);

linalg::ComplexMatrix s_matrix_born(const scattering::RescaledTarget& rt, const bh::QMatrix& q,
                                    double alpha, double total_energy);

// 2 kappa^2 [ (B B+)_mm - |B_mm|^2 ] — the variance form with the diagonal
// element removed; identical to 2 kappa^2 sum_{n != m} |B_nm|^2.
double rho_in_born_full(const BornOperators& ops, std::size_t m);

// Lorentzian-in-energy times the number variance sigma_m^2:
//   2 v_m^-1 (s alpha)^2 v_m^2 / ([(1-gamma)(E - E'_m) - s alpha Q_mm]^2
//                                  + gamma^2 v_m^2) * sigma_m^2.
double rho_in_born_simplified(const scattering::RescaledTarget& rt, const bh::QMatrix& q,
                              double alpha, double total_energy, std::size_t m);

// A_k = v_k^-1 gamma^2 v_k^2 / (Delta_k^2 + gamma^2 v_k^2); when every A-term
// is <= 1 the simplified form bounds the full one from above.
double a_term(const scattering::RescaledTarget& rt, const bh::QMatrix& q, double alpha,
              double total_energy, std::size_t k);

struct BornReportRow {
    double alpha = 0.0;         // bare interaction strength
    double scaled_alpha = 0.0;  // s * alpha
    int channel = 0;
    double resonance_energy = 0.0;  // argmax of the exact cross section
    double rho_exact = 0.0;
    double rho_full = 0.0;        // first-order expansion
    double rho_simplified = 0.0;  // Lorentzian form
    double rel_err_full = 0.0;
    double rel_err_simplified = 0.0;
    double a_max = 0.0;  // max over k != channel at the resonance energy
    bool a_terms_bounded = false;
    bool simplified_bounds_full = false;  // rho_simplified >= rho_full
};

// Per-alpha, per-channel comparison of both Born formulas against the exact
// cross section at each channel's resonance; alphas must be positive ascending.
std::vector<BornReportRow> born_report(const scattering::RescaledTarget& rt,
                                       const bh::QMatrix& q, const std::vector<double>& alphas,
                                       const scattering::EnergyGrid& grid, int threads = 0);

}  // namespace dwscat::born
