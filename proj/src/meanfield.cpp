#include "dwscat/meanfield.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dwscat::mf {

namespace {

constexpr double kSphereTolerance = 1e-4;

void require_on_sphere(const BlochState& s) {
    if (std::abs(s.norm() - 0.5) > kSphereTolerance) {
        std::ostringstream msg;
        msg << "meanfield: state (" << s.jx << ", " << s.jy << ", " << s.jz
            << ") is not on the radius-1/2 Bloch sphere";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

void MFParams::validate() const {
    if (!(hopping > 0.0)) throw std::invalid_argument("MFParams: hopping must be > 0");
    if (!std::isfinite(u)) throw std::invalid_argument("MFParams: u must be finite");
}

double BlochState::norm() const { return std::sqrt(jx * jx + jy * jy + jz * jz); }

double energy_per_particle(const BlochState& s, const MFParams& p) {
    p.validate();
    require_on_sphere(s);
    const double k = p.hopping;
    return k * p.u * (0.5 + 2.0 * s.jz * s.jz) - 2.0 * k * s.jx;
}

double separatrix_energy_per_particle(const MFParams& p) {
    return p.hopping * (0.5 * p.u + 1.0);
}

BlochState derivative(const BlochState& s, const MFParams& p) {
    const double k = p.hopping;
    const double ku4 = 4.0 * k * p.u;
    return BlochState{-ku4 * s.jy * s.jz, (ku4 * s.jx + 2.0 * k) * s.jz, -2.0 * k * s.jy};
}

std::vector<BlochState> fixed_points(const MFParams& p) {
    p.validate();
    std::vector<BlochState> fp{{0.5, 0.0, 0.0}, {-0.5, 0.0, 0.0}};
    if (p.u > 1.0) {
        const double jx = -0.5 / p.u;
        const double jz = 0.5 * std::sqrt(1.0 - 1.0 / (p.u * p.u));
        fp.push_back({jx, 0.0, jz});
        fp.push_back({jx, 0.0, -jz});
    }
    return fp;
}

Trajectory integrate(const BlochState& s0, const MFParams& p, const IntegrateOptions& opt) {
    p.validate();
    require_on_sphere(s0);
    if (!(opt.dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
    if (!(opt.t_final > 0.0)) throw std::invalid_argument("integrate: t_final must be > 0");
    if (opt.store_stride == 0) throw std::invalid_argument("integrate: store_stride must be >= 1");

    const auto steps = static_cast<std::size_t>(std::llround(opt.t_final / opt.dt));
    const double h0 = energy_per_particle(s0, p);

    Trajectory tr;
    tr.t_final = steps * opt.dt;
    tr.dt = opt.dt;
    tr.time.reserve(steps / opt.store_stride + 2);
    tr.states.reserve(steps / opt.store_stride + 2);
    tr.energy.reserve(steps / opt.store_stride + 2);
    tr.time.push_back(0.0);
    tr.states.push_back(s0);
    tr.energy.push_back(h0);

    const double k = p.hopping;
    const double ku4 = 4.0 * k * p.u;
    const auto fx = [&](const BlochState& s) { return -ku4 * s.jy * s.jz; };
    const auto fy = [&](const BlochState& s) { return (ku4 * s.jx + 2.0 * k) * s.jz; };
    const auto fz = [&](const BlochState& s) { return -2.0 * k * s.jy; };

    BlochState s = s0;
    double sum_jz = 0.0;
    const double dt = opt.dt;
    for (std::size_t step = 1; step <= steps; ++step) {
        const BlochState k1{fx(s), fy(s), fz(s)};
        const BlochState s2{s.jx + 0.5 * dt * k1.jx, s.jy + 0.5 * dt * k1.jy,
                            s.jz + 0.5 * dt * k1.jz};
        const BlochState k2{fx(s2), fy(s2), fz(s2)};
        const BlochState s3{s.jx + 0.5 * dt * k2.jx, s.jy + 0.5 * dt * k2.jy,
                            s.jz + 0.5 * dt * k2.jz};
        const BlochState k3{fx(s3), fy(s3), fz(s3)};
        const BlochState s4{s.jx + dt * k3.jx, s.jy + dt * k3.jy, s.jz + dt * k3.jz};
        const BlochState k4{fx(s4), fy(s4), fz(s4)};
        s.jx += dt / 6.0 * (k1.jx + 2.0 * k2.jx + 2.0 * k3.jx + k4.jx);
        s.jy += dt / 6.0 * (k1.jy + 2.0 * k2.jy + 2.0 * k3.jy + k4.jy);
        s.jz += dt / 6.0 * (k1.jz + 2.0 * k2.jz + 2.0 * k3.jz + k4.jz);

        sum_jz += s.jz;
        const double h = k * p.u * (0.5 + 2.0 * s.jz * s.jz) - 2.0 * k * s.jx;
        tr.norm_drift = std::max(tr.norm_drift, std::abs(s.norm() - 0.5));
        tr.energy_drift = std::max(tr.energy_drift, std::abs(h - h0));

        if (step % opt.store_stride == 0 || step == steps) {
            tr.time.push_back(step * dt);
            tr.states.push_back(s);
            tr.energy.push_back(h);
        }
    }
    tr.avg_jz = sum_jz / double(steps);

    if (tr.norm_drift > opt.drift_tolerance ||
        tr.energy_drift > opt.drift_tolerance * std::max(1.0, std::abs(h0))) {
        std::ostringstream msg;
        msg << "integrate: drift exceeded tolerance (norm " << tr.norm_drift << ", energy "
            << tr.energy_drift << "); reduce dt (current dt = " << opt.dt << ")";
        throw std::runtime_error(msg.str());
    }
    return tr;
}

Trajectory integrate(const BlochState& s0, const MFParams& p, double t_final, double dt) {
    IntegrateOptions opt;
    opt.t_final = t_final;
    opt.dt = dt;
    return integrate(s0, p, opt);
}

RegimeTag classify(const Trajectory& tr, const MFParams& p) {
    p.validate();
    // Conservative coverage requirement: five periods of the slowest linear
    // oscillation (Rabi period pi/k).
    const double pi = 3.14159265358979323846;
    if (tr.t_final * p.hopping < 5.0 * pi)
        throw std::invalid_argument("classify: trajectory must cover at least 5 periods");

    const bool trapped_jz = std::abs(tr.avg_jz) > 0.05;
    const bool trapped_energy =
        p.u > 1.0 && tr.energy.front() > separatrix_energy_per_particle(p);
    if (trapped_jz == trapped_energy)
        return trapped_jz ? RegimeTag::SelfTrapped : RegimeTag::Rabi;
    return RegimeTag::SeparatrixAdjacent;
}

double dominant_frequency(const Trajectory& tr) {
    const std::size_t n = tr.states.size();
    if (n < 3) throw std::invalid_argument("dominant_frequency: trajectory too short");

    std::vector<double> crossings;
    double prev = tr.states[0].jz - tr.avg_jz;
    for (std::size_t i = 1; i < n; ++i) {
        const double cur = tr.states[i].jz - tr.avg_jz;
        if ((prev < 0.0 && cur >= 0.0) || (prev > 0.0 && cur <= 0.0)) {
            // Linear interpolation of the crossing time.
            const double t0 = tr.time[i - 1];
            const double t1 = tr.time[i];
            crossings.push_back(t0 + (t1 - t0) * prev / (prev - cur));
        }
        if (cur != 0.0) prev = cur;
    }
    if (crossings.size() < 10) {
        std::ostringstream msg;
        msg << "dominant_frequency: only " << crossings.size()
            << " zero crossings, need at least 10";
        throw std::runtime_error(msg.str());
    }
    // Use an even number of half-period intervals so that the alternating
    // crossing shifts from a nonzero baseline cancel exactly.
    std::size_t m = crossings.size();
    if ((m - 1) % 2 == 1) --m;
    const double mean_interval = (crossings[m - 1] - crossings[0]) / double(m - 1);
    return 1.0 / (2.0 * mean_interval);
}

}  // namespace dwscat::mf
