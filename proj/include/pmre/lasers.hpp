// lasers.hpp: sideband operators d_|m|, engineered jump operators K_mu / K'_mu
// with damping increments eps_mu, and the standard channel presets.

#pragma once

#include <vector>

#include "pmre/types.hpp"

namespace pmre::lasers {

// One sideband drive. m > 0 removes |m| phonons (red), m < 0 adds them (blue),
// m = 0 is the carrier. rabi_ratio is Omega_{mu,j} / Omega_r.
struct LaserLine {
    int m;
    double rabi_ratio;
    double eta;
};

// One engineered channel: its drive lines plus the dimensionless pulse area
// Omega_r * tau_r shared by the lines.
struct ChannelSpec {
    std::vector<LaserLine> lines;
    double tau_r_omega_r;
};

// Rescaled jump operator K'_mu and its per-stage damping increment eps_mu.
// eps above 0.1 leaves the perturbative regime; callers treat that as a
// warning condition.
struct EngineeredChannel {
    Mat k_prime;
    double epsilon;
};

constexpr int kMaxSidebandOrder = 4;
constexpr double kEpsilonGuard = 0.1;

void validate_line(const LaserLine& line);
void validate_spec(const ChannelSpec& spec);

// d_|m| for m > 0: e^{-eta^2/2} sum_k (i eta)^{2k+|m|} / (k! (k+|m|)!)
// (a^dag)^k a^k a^{|m|}, summed until terms vanish at truncation.
// m < 0 returns (-1)^{|m|} d_|m|^dag; m = 0 the diagonal carrier series.
Mat sideband_operator(const FockSpace& space, int m, double eta);

// K_mu = sum_j rabi_ratio_j x (sign-selected d or (-1)^{|m|} d^dag).
Mat engineering_operator(const FockSpace& space, const std::vector<LaserLine>& lines);

// K'_mu = K_mu / (i eta e^{-eta^2/2} rabi_ratio_1), anchored on the first line
// (which must be m = +-1); eps_mu = (rabi_ratio_1 tau eta)^2 e^{-eta^2}.
EngineeredChannel rescale_channel(const FockSpace& space, const ChannelSpec& spec);

enum class PresetKind {
    coherent,
    squeezed,
    squeezed_coherent,
    cooling,
    heating,
    thermal_pair,
};

struct PresetParams {
    double eta{0.05};
    double tau_r_omega_r{4.5};
    double r{0.0};      // squeezing parameter, rows (ii)/(iii)
    Cplx alpha{0.0};    // displacement, rows (i)/(iii); pure imaginary, Im >= 0
    double nbar{0.0};   // thermal_pair target occupation
};

// Channel specs whose rescaled K' match the target rows to O(eta^2).
// thermal_pair returns two channels with eps_1/eps_2 = 1 + 1/nbar; everything
// else returns a single channel.
std::vector<ChannelSpec> table1_preset(PresetKind kind, const PresetParams& params);

} // namespace pmre::lasers
