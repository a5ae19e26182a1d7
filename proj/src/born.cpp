#include "dwscat/born.hpp"

#include <cmath>
#include <stdexcept>

namespace dwscat::born {

using linalg::ComplexMatrix;
using linalg::cplx;

BornOperators born_operators(const scattering::RescaledTarget& rt, const bh::QMatrix& q,
                             double alpha, double total_energy) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("born_operators: alpha must be >= 0");
    const std::size_t n = rt.channel_count();
    if (q.q.rows != n) throw std::invalid_argument("born_operators: Q dimension mismatch");

    const auto ch = scattering::channels(rt, total_energy);
    const double gamma = rt.lead.gamma;
    const double scaled_alpha = rt.scale * alpha;

    BornOperators ops;
    ops.kappa = scaled_alpha / gamma;
    ops.total_energy = total_energy;
    ops.q_diag.resize(n);
    ops.q_offdiag = q.q;
    ops.s_d.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        ops.q_diag[i] = q.q(i, i);
        ops.q_offdiag(i, i) = 0.0;
        const cplx denom((1.0 - gamma) * ch.kinetic[i] - scaled_alpha * ops.q_diag[i],
                         gamma * ch.velocity[i]);
        ops.s_d[i] = cplx(0.0, gamma * ch.velocity[i]) / denom;
    }
    ops.b = ComplexMatrix(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        const cplx left = ops.s_d[a] / std::sqrt(ch.velocity[a]);
        for (std::size_t bcol = 0; bcol < n; ++bcol) {
            if (ops.q_offdiag(a, bcol) == 0.0) continue;
            ops.b(a, bcol) = left * ops.q_offdiag(a, bcol) * ops.s_d[bcol] /
                             std::sqrt(ch.velocity[bcol]);
        }
    }
    return ops;
}

ComplexMatrix s_matrix_born(const scattering::RescaledTarget& rt, const bh::QMatrix& q,
                            double alpha, double total_energy) {
    const auto ops = born_operators(rt, q, alpha, total_energy);
    const std::size_t n = rt.channel_count();
    ComplexMatrix s(n, n);
    const cplx ik(0.0, ops.kappa);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            s(a, b) = (a == b ? ops.s_d[a] : cplx{}) - ik * ops.b(a, b);
    return s;
}

double rho_in_born_full(const BornOperators& ops, std::size_t m) {
    const std::size_t n = ops.s_d.size();
    if (m >= n) throw std::invalid_argument("rho_in_born_full: channel out of range");
    double sum = 0.0;  // (B B+)_mm - |B_mm|^2, row m of the symmetric B
    for (std::size_t k = 0; k < n; ++k)
        if (k != m) sum += std::norm(ops.b(m, k));
    return 2.0 * ops.kappa * ops.kappa * sum;
}

double rho_in_born_simplified(const scattering::RescaledTarget& rt, const bh::QMatrix& q,
                              double alpha, double total_energy, std::size_t m) {
    const std::size_t n = rt.channel_count();
    if (m >= n) throw std::invalid_argument("rho_in_born_simplified: channel out of range");
    const auto ch = scattering::channels(rt, total_energy);
    if (!(ch.velocity[m] > 0.0))
        throw std::invalid_argument("rho_in_born_simplified: channel velocity must be > 0");
    const double gamma = rt.lead.gamma;
    const double scaled_alpha = rt.scale * alpha;
    const double detune =
        (1.0 - gamma) * ch.kinetic[m] - scaled_alpha * q.diag_expectation[m];
    const double gv = gamma * ch.velocity[m];
    const double lorentz =
        scaled_alpha * scaled_alpha * ch.velocity[m] * ch.velocity[m] /
        (detune * detune + gv * gv);
    const double sigma2 = q.std_dev[m] * q.std_dev[m];
    return 2.0 / ch.velocity[m] * lorentz * sigma2;
}

double a_term(const scattering::RescaledTarget& rt, const bh::QMatrix& q, double alpha,
              double total_energy, std::size_t k) {
    const auto ch = scattering::channels(rt, total_energy);
    const double gamma = rt.lead.gamma;
    const double scaled_alpha = rt.scale * alpha;
    const double detune =
        (1.0 - gamma) * ch.kinetic[k] - scaled_alpha * q.diag_expectation[k];
    const double gv = gamma * ch.velocity[k];
    return (1.0 / ch.velocity[k]) * gv * gv / (detune * detune + gv * gv);
}

std::vector<BornReportRow> born_report(const scattering::RescaledTarget& rt,
                                       const bh::QMatrix& q, const std::vector<double>& alphas,
                                       const scattering::EnergyGrid& grid, int threads) {
    if (alphas.empty()) throw std::invalid_argument("born_report: alpha grid must be nonempty");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0))
            throw std::invalid_argument("born_report: alphas must be positive");
        if (i > 0 && alphas[i] <= alphas[i - 1])
            throw std::invalid_argument("born_report: alphas must be ascending");
    }

    const std::size_t nch = rt.channel_count();
    std::vector<BornReportRow> rows;
    rows.reserve(alphas.size() * nch);
    for (double alpha : alphas) {
        const auto sw = scattering::sweep(rt, q, alpha, grid, /*with_pn=*/false, threads);
        for (std::size_t m = 0; m < nch; ++m) {
            BornReportRow row;
            row.alpha = alpha;
            row.scaled_alpha = rt.scale * alpha;
            row.channel = int(m);
            row.resonance_energy = sw.resonance_energy[m];
            row.rho_exact = sw.peak_rho[m];
            const auto ops = born_operators(rt, q, alpha, row.resonance_energy);
            row.rho_full = rho_in_born_full(ops, m);
            row.rho_simplified =
                rho_in_born_simplified(rt, q, alpha, row.resonance_energy, m);
            row.rel_err_full = std::abs(row.rho_full - row.rho_exact) / row.rho_exact;
            row.rel_err_simplified =
                std::abs(row.rho_simplified - row.rho_exact) / row.rho_exact;
            row.a_max = 0.0;
            for (std::size_t k = 0; k < nch; ++k) {
                if (k == m) continue;
                row.a_max = std::max(row.a_max,
                                     a_term(rt, q, alpha, row.resonance_energy, k));
            }
            row.a_terms_bounded = row.a_max <= 1.0;
            row.simplified_bounds_full = row.rho_simplified >= row.rho_full;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace dwscat::born
