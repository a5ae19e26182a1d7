// bose_hubbard.hpp — two-site Bose-Hubbard dimer: Hamiltonian assembly,
// exact diagonalization, interaction matrix Q = <E_n|n_1|E_m>, parity, and
// classification of levels against the mean-field separatrix.
//
// Fock basis |n_1>, n_1 = 0..N, with well two holding N - n_1. The dimer
// Hamiltonian is tridiagonal in this basis:
//   diag[n_1]    = U/2 [n_1(n_1-1) + (N-n_1)(N-n_1-1)] + eps_b n_1
//   offdiag[n_1] = -k sqrt((n_1+1)(N-n_1))
// The small bias eps_b breaks the well-exchange symmetry so that the
// quasi-degenerate pairs above the separatrix localize on single wells.

#pragma once

#include <vector>

#include "dwscat/linalg.hpp"
#include "dwscat/regime.hpp"

namespace dwscat::bh {

struct BHParams {
    int n_bosons = 1;          // N
    double hopping = 1.0;      // k > 0
    double interaction = 0.0;  // U >= 0
    double bias = 0.0;         // eps_b >= 0, coefficient of n_1

    // Common parameterization via the control parameter u = U N / (2k).
    static BHParams from_control(int n_bosons, double hopping, double u, double bias);
    static double default_bias(double hopping) { return 0.01 * hopping; }

    double control_parameter() const;  // u = U N / (2k)
    std::size_t dim() const { return static_cast<std::size_t>(n_bosons) + 1; }
    void validate() const;  // throws std::invalid_argument
};

struct EigenSystem {
    BHParams params;
    std::vector<double> energies;  // ascending, length N+1
    linalg::RealMatrix states;     // Fock-basis eigenvectors, column per level

    std::size_t dim() const { return energies.size(); }
};

struct QMatrix {
    linalg::RealMatrix q;                  // symmetric (N+1)x(N+1)
    std::vector<double> diag_expectation;  // Q_nn = <E_n|n_1|E_n>
    std::vector<double> std_dev;           // sigma_n = sqrt(<n_1^2>_n - Q_nn^2)
};

struct SeparatrixInfo {
    double e_sep = 0.0;          // N k (u/2 + 1)
    bool has_separatrix = false; // false for u <= 1: every level is Rabi
    int rabi_count = 0;          // number of levels with E_n < e_sep
    int boundary_index = 0;      // first level index with E_n > e_sep (== rabi_count)
    int window = 3;              // levels tagged adjacent on each side of the boundary
    std::vector<RegimeTag> classification;
};

// Intra-pair splitting vs spacing to the next lower level, for the
// quasi-degenerate pairs above the separatrix (ascending in energy).
struct PairInfo {
    int lower_index = 0;
    double pair_gap = 0.0;      // E_{p+1} - E_p
    double neighbor_gap = 0.0;  // E_p - E_{p-1}
};

struct AngularMomenta {
    linalg::RealMatrix jx;     // (b2 b1+ + b1 b2+)/2, real symmetric tridiagonal
    linalg::ComplexMatrix jy;  // i(b2 b1+ - b1 b2+)/2, imaginary antisymmetric
    linalg::RealMatrix jz;     // (n_2 - n_1)/2, diagonal
};

linalg::SymTriMatrix build_hamiltonian(const BHParams& p);
EigenSystem diagonalize(const BHParams& p);
QMatrix q_matrix(const EigenSystem& es);
AngularMomenta angular_momentum_matrices(const BHParams& p);

// Permutation exchanging n_1 <-> N - n_1; squares to the identity and
// commutes with the Hamiltonian at zero bias.
linalg::RealMatrix parity_matrix(const BHParams& p);

// Parity sign per eigenstate (+1/-1) from <v|P|v>; meaningful at zero bias.
std::vector<int> parity_signs(const EigenSystem& es);

double separatrix_energy(const BHParams& p);  // N k (u/2 + 1)
SeparatrixInfo separatrix(const BHParams& p, const EigenSystem& es, int window = 3);
std::vector<PairInfo> pair_splitting(const EigenSystem& es, const SeparatrixInfo& s);

// Lowest pair (p, p+1) fully above the separatrix under the top-down pairing
// used by pair_splitting; -1 if none exists.
int first_pair_above(const EigenSystem& es, const SeparatrixInfo& s);

}  // namespace dwscat::bh
