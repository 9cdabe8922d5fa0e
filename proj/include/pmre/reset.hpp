// reset.hpp: sequential optical-pumping reset of the d = 4 electronic manifold
// and the effective decay rate it realizes.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pmre/types.hpp"

namespace pmre::reset {

using ElectronicState = Eigen::Matrix4cd;

// Reset-laser Rabi frequency and the spontaneous rate that sets the time unit.
// omega_tilde/gamma30 above 0.2 is rejected; above 0.1 it only warns (the
// adiabatic elimination degrades).
struct ResetParams {
    double omega_tilde;
    double gamma30;

    double gamma_eff() const { return 4.0 * omega_tilde * omega_tilde / gamma30; }
};

struct ResetSample {
    double t;
    ElectronicState rho;
};

struct ResetSeries {
    std::vector<ResetSample> samples;
    bool adiabatic_warning{false};
};

// Integrates d rho/dt = -i/hbar [H_Q, rho] + D_30(rho) with H_Q coupling
// target_level <-> |3> at the carrier, by fixed-step RK4. Samples every
// sample_every steps (plus the endpoint).
ResetSeries reset_step(const ElectronicState& rho_e, int target_level,
                       const ResetParams& params, double t_end, double dt,
                       int sample_every = 1);

// Two sequential pumping steps (targets 1 then 2) of t_per_step each;
// t_per_step <= 0 selects the default 8 / gamma_eff.
ElectronicState full_reset(const ElectronicState& rho_e, const ResetParams& params,
                           double t_per_step = 0.0, double dt = 0.0);

// Slope of a linear regression of log rho_level,level over the samples where
// the population lies in [0.05, 0.8]. Throws when fewer than two samples fall
// inside the window.
double fit_decay_rate(const ResetSeries& series, int level);

constexpr double kDefaultDtGamma = 0.005;  // dt * gamma30 used when dt <= 0

} // namespace pmre::reset
