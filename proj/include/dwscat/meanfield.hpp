// meanfield.hpp — discrete Gross-Pitaevskii dynamics of the dimer on the
// Bloch sphere. With |A_1|^2 = 1/2 - jz and |A_2|^2 = 1/2 + jz the energy per
// particle is
//   h = k u (1/2 + 2 jz^2) - 2 k jx,
// and the canonical equations reduce to
//   d jx/dt = -4 k u jy jz
//   d jy/dt =  4 k u jx jz + 2 k jz
//   d jz/dt = -2 k jy.
// The separatrix passes through the hyperbolic point (-1/2, 0, 0) at
// h = k (u/2 + 1), matching the quantum spectrum without any offset.

#pragma once

#include <vector>

#include "dwscat/regime.hpp"

namespace dwscat::mf {

struct MFParams {
    double u = 0.0;        // control parameter U N / 2k
    double hopping = 1.0;  // k > 0

    void validate() const;  // throws std::invalid_argument
};

struct BlochState {
    double jx = 0.0;
    double jy = 0.0;
    double jz = 0.0;

    double norm() const;  // should equal 1/2 on the sphere
};

struct Trajectory {
    std::vector<double> time;
    std::vector<BlochState> states;
    std::vector<double> energy;  // h(t) per particle

    double avg_jz = 0.0;       // time average over every integration step
    double norm_drift = 0.0;   // max | |J(t)| - 1/2 |
    double energy_drift = 0.0; // max | h(t) - h(0) |
    double t_final = 0.0;
    double dt = 0.0;
    RegimeTag tag = RegimeTag::Rabi;
};

struct IntegrateOptions {
    double t_final = 20.0;
    double dt = 1e-3;
    std::size_t store_stride = 1;     // keep every stride-th sample
    double drift_tolerance = 1e-6;    // abort threshold for norm and energy drift
};

double energy_per_particle(const BlochState& s, const MFParams& p);
double separatrix_energy_per_particle(const MFParams& p);  // k (u/2 + 1)
BlochState derivative(const BlochState& s, const MFParams& p);

// Elliptic/hyperbolic stationary states: (1/2,0,0), (-1/2,0,0), and for u > 1
// the self-trapped pair (-1/(2u), 0, +-sqrt(1/4 - 1/(4u^2))).
std::vector<BlochState> fixed_points(const MFParams& p);

// Fixed-step RK4 without renormalization; the recorded drift is the accuracy
// diagnostic and exceeding the tolerance raises an error advising a smaller dt.
Trajectory integrate(const BlochState& s0, const MFParams& p, const IntegrateOptions& opt);
Trajectory integrate(const BlochState& s0, const MFParams& p, double t_final, double dt);

// Self-trapped if |<jz>| > 0.05, cross-checked against the energy criterion
// (h above/below the separatrix); disagreement tags the trajectory as
// separatrix-adjacent.
RegimeTag classify(const Trajectory& tr, const MFParams& p);

// Oscillation frequency (cycles per unit time) from the mean interval between
// zero crossings of jz - <jz>; requires at least 10 crossings.
double dominant_frequency(const Trajectory& tr);

}  // namespace dwscat::mf
