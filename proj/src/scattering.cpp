#include "dwscat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dwscat::scattering {

using linalg::ComplexMatrix;
using linalg::cplx;

void LeadParams::validate() const {
    if (!(hopping > 0.0)) throw std::invalid_argument("LeadParams: hopping must be > 0");
    if (!(gamma > 0.0) || gamma > 1.0)
        throw std::invalid_argument("LeadParams: gamma must lie in (0, 1]");
}

double RescaledTarget::open_lo() const {
    return energies.back() - 2.0 * lead.hopping;
}

double RescaledTarget::open_hi() const {
    return energies.front() + 2.0 * lead.hopping;
}

double EnergyGrid::at(int i) const {
    if (points == 1) return lo;
    return lo + (hi - lo) * double(i) / double(points - 1);
}

void EnergyGrid::validate() const {
    if (points < 1) throw std::invalid_argument("EnergyGrid: points must be >= 1");
    if (!(lo <= hi)) throw std::invalid_argument("EnergyGrid: lo must not exceed hi");
}

RescaledTarget rescale(const bh::EigenSystem& es, const LeadParams& lead, double band_fraction) {
    lead.validate();
    if (!(band_fraction > 0.0) || !(band_fraction < 1.0))
        throw std::invalid_argument("rescale: band_fraction must lie in (0, 1)");
    const double width = es.energies.back() - es.energies.front();
    if (!(width > 0.0))
        throw std::invalid_argument("rescale: spectrum width is degenerate");

    RescaledTarget rt;
    rt.lead = lead;
    rt.band_fraction = band_fraction;
    rt.center = 0.5 * (es.energies.back() + es.energies.front());
    rt.scale = band_fraction * 4.0 * lead.hopping / width;
    rt.energies.resize(es.energies.size());
    for (std::size_t i = 0; i < es.energies.size(); ++i)
        rt.energies[i] = rt.scale * (es.energies[i] - rt.center);
    return rt;
}

ChannelSet channels(const RescaledTarget& rt, double total_energy) {
    const double j2 = 2.0 * rt.lead.hopping;
    ChannelSet ch;
    ch.total_energy = total_energy;
    const std::size_t n = rt.channel_count();
    ch.kinetic.resize(n);
    ch.wavenumber.resize(n);
    ch.velocity.resize(n);
    ch.open.assign(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        const double eps = total_energy - rt.energies[i];
        if (!(std::abs(eps) < j2)) {
            std::ostringstream msg;
            msg << "channels: channel " << i << " is closed at total energy " << total_energy
                << " (kinetic energy " << eps << " outside the open band)";
            throw std::runtime_error(msg.str());
        }
        ch.kinetic[i] = eps;
        ch.wavenumber[i] = std::acos(-eps / j2);
        ch.velocity[i] = std::sqrt(j2 * j2 - eps * eps);
    }
    return ch;
}

SMatrixBlock s_matrix(const RescaledTarget& rt, const bh::QMatrix& q, double alpha,
                      double total_energy) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("s_matrix: alpha must be >= 0");
    const std::size_t n = rt.channel_count();
    if (q.q.rows != n || q.q.cols != n)
        throw std::invalid_argument("s_matrix: Q matrix dimension mismatch");

    const auto ch = channels(rt, total_energy);
    const double gamma = rt.lead.gamma;
    const double one_minus_gamma = 1.0 - gamma;
    const double scaled_alpha = rt.scale * alpha;

    ComplexMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) m(a, b) = -scaled_alpha * q.q(a, b);
        m(a, a) += cplx(one_minus_gamma * ch.kinetic[a], gamma * ch.velocity[a]);
    }
    ComplexMatrix rhs(n, n);
    for (std::size_t a = 0; a < n; ++a) rhs(a, a) = std::sqrt(ch.velocity[a]);

    auto x = linalg::solve_complex(m, rhs);

    SMatrixBlock block;
    block.total_energy = total_energy;
    block.s = ComplexMatrix(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        const cplx row = cplx(0.0, gamma) * std::sqrt(ch.velocity[a]);
        for (std::size_t b = 0; b < n; ++b) block.s(a, b) = row * x(a, b);
    }
    return block;
}

double inelastic_cross_section(const SMatrixBlock& block, std::size_t m) {
    const std::size_t n = block.s.rows;
    if (m >= n) throw std::invalid_argument("inelastic_cross_section: channel out of range");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (i != m) sum += std::norm(block.s(i, m));
    return 2.0 * sum;
}

double participation_number(const SMatrixBlock& block, std::size_t m) {
    const std::size_t n = block.s.rows;
    if (m >= n) throw std::invalid_argument("participation_number: channel out of range");
    double s2 = 0.0, s4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == m) continue;
        const double w = std::norm(block.s(i, m));
        s2 += w;
        s4 += w * w;
    }
    if (s2 < 1e-300) {
        std::ostringstream msg;
        msg << "participation_number: inelastic weight of column " << m
            << " vanishes (alpha = 0 or numerically elastic column)";
        throw std::runtime_error(msg.str());
    }
    return s2 * s2 / s4;
}

double flux_identity_defect(const SMatrixBlock& block) {
    const std::size_t n = block.s.rows;
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            cplx lhs = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                lhs += std::conj(block.s(k, a)) * block.s(k, b);
            const cplx rhs = block.s(a, b) + std::conj(block.s(b, a));
            worst = std::max(worst, std::abs(2.0 * lhs - rhs));
        }
    return worst;
}

EnergyGrid default_grid(const RescaledTarget& rt, double margin, int points) {
    if (!(margin >= 0.0)) throw std::invalid_argument("default_grid: margin must be >= 0");
    EnergyGrid g;
    g.lo = rt.open_lo() + margin * rt.lead.hopping;
    g.hi = rt.open_hi() - margin * rt.lead.hopping;
    g.points = points;
    if (!(g.lo < g.hi))
        throw std::invalid_argument("default_grid: open window is empty at this margin");
    g.validate();
    return g;
}

SweepResult sweep(const RescaledTarget& rt, const bh::QMatrix& q, double alpha,
                  const EnergyGrid& grid, bool with_pn, int threads) {
    grid.validate();
    if (with_pn && alpha == 0.0)
        throw std::invalid_argument("sweep: participation number is undefined for alpha = 0");

    const std::size_t nch = rt.channel_count();
    const int npts = grid.points;
    SweepResult res;
    res.channels = nch;
    res.alpha = alpha;
    res.has_pn = with_pn;
    res.energies.resize(npts);
    for (int i = 0; i < npts; ++i) res.energies[i] = grid.at(i);
    res.rho.assign(nch * npts, 0.0);
    if (with_pn) res.pn.assign(nch * npts, 0.0);

    const auto compute_range = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const auto block = s_matrix(rt, q, alpha, res.energies[i]);
            for (std::size_t m = 0; m < nch; ++m) {
                res.rho[m * npts + i] = inelastic_cross_section(block, m);
                if (with_pn) res.pn[m * npts + i] = participation_number(block, m);
            }
        }
    };

    int nthreads = threads;
    if (nthreads <= 0)
        nthreads = std::clamp(int(std::thread::hardware_concurrency()), 1, 8);
    nthreads = std::min(nthreads, npts);
    if (nthreads <= 1) {
        compute_range(0, npts);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        std::vector<std::exception_ptr> errors(nthreads);
        for (int t = 0; t < nthreads; ++t) {
            const int begin = npts * t / nthreads;
            const int end = npts * (t + 1) / nthreads;
            pool.emplace_back([&, t, begin, end] {
                try {
                    compute_range(begin, end);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    res.resonance_index.resize(nch);
    res.resonance_energy.resize(nch);
    res.peak_rho.resize(nch);
    res.pn_avg.assign(nch, 0.0);
    for (std::size_t m = 0; m < nch; ++m) {
        int best = 0;
        for (int i = 1; i < npts; ++i)
            if (res.rho[m * npts + i] > res.rho[m * npts + best]) best = i;
        res.resonance_index[m] = best;
        res.resonance_energy[m] = res.energies[best];
        res.peak_rho[m] = res.rho[m * npts + best];
        if (with_pn) {
            double acc = 0.0;
            for (int i = 0; i < npts; ++i) acc += res.pn[m * npts + i];
            res.pn_avg[m] = acc / double(npts);
        }
    }
    return res;
}

}  // namespace dwscat::scattering
