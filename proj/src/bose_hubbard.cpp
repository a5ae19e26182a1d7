#include "dwscat/bose_hubbard.hpp"

#include <cmath>
#include <stdexcept>

namespace dwscat::bh {

BHParams BHParams::from_control(int n_bosons, double hopping, double u, double bias) {
    BHParams p;
    p.n_bosons = n_bosons;
    p.hopping = hopping;
    p.interaction = n_bosons > 0 ? 2.0 * hopping * u / n_bosons : 0.0;
    p.bias = bias;
    p.validate();
    return p;
}

double BHParams::control_parameter() const {
    return interaction * n_bosons / (2.0 * hopping);
}

void BHParams::validate() const {
    if (n_bosons < 1) throw std::invalid_argument("BHParams: n_bosons must be >= 1");
    if (!(hopping > 0.0)) throw std::invalid_argument("BHParams: hopping must be > 0");
    if (!(interaction >= 0.0)) throw std::invalid_argument("BHParams: interaction must be >= 0");
    if (!(bias >= 0.0)) throw std::invalid_argument("BHParams: bias must be >= 0");
    if (!std::isfinite(control_parameter()))
        throw std::invalid_argument("BHParams: control parameter u must be finite");
}

linalg::SymTriMatrix build_hamiltonian(const BHParams& p) {
    p.validate();
    const int n = p.n_bosons;
    linalg::SymTriMatrix h;
    h.diag.resize(p.dim());
    h.offdiag.resize(p.dim() - 1);
    for (int n1 = 0; n1 <= n; ++n1) {
        const double n2 = n - n1;
        h.diag[n1] = 0.5 * p.interaction * (n1 * (n1 - 1.0) + n2 * (n2 - 1.0)) + p.bias * n1;
    }
    for (int n1 = 0; n1 < n; ++n1)
        h.offdiag[n1] = -p.hopping * std::sqrt(double(n1 + 1) * double(n - n1));
    return h;
}

EigenSystem diagonalize(const BHParams& p) {
    const auto ed = linalg::eig_sym_tridiagonal(build_hamiltonian(p));
    return EigenSystem{p, ed.values, ed.vectors};
}

QMatrix q_matrix(const EigenSystem& es) {
    const std::size_t dim = es.dim();
    const auto& v = es.states;
    QMatrix out;
    out.q = linalg::RealMatrix(dim, dim);
    out.diag_expectation.resize(dim);
    out.std_dev.resize(dim);

    // Q = V^T diag(n_1) V, accumulated over the Fock index.
    for (std::size_t n = 0; n < dim; ++n)
        for (std::size_t m = n; m < dim; ++m) {
            double s = 0.0;
            for (std::size_t i = 0; i < dim; ++i) s += double(i) * v(i, n) * v(i, m);
            out.q(n, m) = s;
            out.q(m, n) = s;
        }
    for (std::size_t n = 0; n < dim; ++n) {
        double sq = 0.0;
        for (std::size_t i = 0; i < dim; ++i) sq += double(i) * double(i) * v(i, n) * v(i, n);
        const double mean = out.q(n, n);
        out.diag_expectation[n] = mean;
        out.std_dev[n] = std::sqrt(std::max(0.0, sq - mean * mean));
    }
    return out;
}

AngularMomenta angular_momentum_matrices(const BHParams& p) {
    p.validate();
    const int n = p.n_bosons;
    const std::size_t dim = p.dim();
    AngularMomenta j;
    j.jx = linalg::RealMatrix(dim, dim);
    j.jy = linalg::ComplexMatrix(dim, dim);
    j.jz = linalg::RealMatrix(dim, dim);
    for (int n1 = 0; n1 < n; ++n1) {
        const double t = 0.5 * std::sqrt(double(n1 + 1) * double(n - n1));
        j.jx(n1 + 1, n1) = t;
        j.jx(n1, n1 + 1) = t;
        j.jy(n1 + 1, n1) = linalg::cplx(0.0, t);
        j.jy(n1, n1 + 1) = linalg::cplx(0.0, -t);
    }
    for (int n1 = 0; n1 <= n; ++n1) j.jz(n1, n1) = 0.5 * (n - 2.0 * n1);
    return j;
}

linalg::RealMatrix parity_matrix(const BHParams& p) {
    p.validate();
    const std::size_t dim = p.dim();
    linalg::RealMatrix pm(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) pm(i, dim - 1 - i) = 1.0;
    return pm;
}

std::vector<int> parity_signs(const EigenSystem& es) {
    const std::size_t dim = es.dim();
    std::vector<int> signs(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        double s = 0.0;  // <v_j| P |v_j>
        for (std::size_t i = 0; i < dim; ++i)
            s += es.states(i, j) * es.states(dim - 1 - i, j);
        signs[j] = s >= 0.0 ? 1 : -1;
    }
    return signs;
}

double separatrix_energy(const BHParams& p) {
    return p.n_bosons * p.hopping * (0.5 * p.control_parameter() + 1.0);
}

SeparatrixInfo separatrix(const BHParams& p, const EigenSystem& es, int window) {
    SeparatrixInfo info;
    info.e_sep = separatrix_energy(p);
    info.has_separatrix = p.control_parameter() > 1.0;
    info.window = window;
    const int dim = static_cast<int>(es.dim());

    int rabi = 0;
    while (rabi < dim && es.energies[rabi] < info.e_sep) ++rabi;
    info.rabi_count = info.has_separatrix ? rabi : dim;
    info.boundary_index = info.rabi_count;

    info.classification.assign(es.dim(), RegimeTag::Rabi);
    if (!info.has_separatrix) return info;
    for (int i = 0; i < dim; ++i) {
        if (i >= info.boundary_index) info.classification[i] = RegimeTag::SelfTrapped;
        if (i >= info.boundary_index - window && i < info.boundary_index + window)
            info.classification[i] = RegimeTag::SeparatrixAdjacent;
    }
    return info;
}

namespace {

// Pairs are anchored at the top of the spectrum, where the two most localized
// states always form the tightest quasi-degenerate doublet: (dim-2, dim-1),
// (dim-4, dim-3), ... walking down.
int pair_alignment(int dim) { return (dim - 2) % 2; }

}  // namespace

std::vector<PairInfo> pair_splitting(const EigenSystem& es, const SeparatrixInfo& s) {
    std::vector<PairInfo> pairs;
    if (!s.has_separatrix) return pairs;
    const int dim = static_cast<int>(es.dim());
    for (int p = pair_alignment(dim); p + 1 < dim; p += 2) {
        if (p < 1) continue;  // need a lower neighbor for the spacing
        if (es.energies[p] <= s.e_sep) continue;
        pairs.push_back(PairInfo{p, es.energies[p + 1] - es.energies[p],
                                 es.energies[p] - es.energies[p - 1]});
    }
    return pairs;
}

int first_pair_above(const EigenSystem& es, const SeparatrixInfo& s) {
    const auto pairs = pair_splitting(es, s);
    return pairs.empty() ? -1 : pairs.front().lower_index;
}

}  // namespace dwscat::bh
