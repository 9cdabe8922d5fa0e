// collision.hpp: engineering-stage evolution of the vibrational state. Discrete
// Lindblad-increment recursion, Kraus map, exact joint-unitary oracle,
// vectorized Liouvillian, and steady-state extraction.

#pragma once

#include <string>
#include <vector>

#include "pmre/lasers.hpp"
#include "pmre/types.hpp"

namespace pmre::collision {

using lasers::ChannelSpec;
using lasers::EngineeredChannel;

// dim^2 x dim^2 matrix acting on column-stacked density matrices.
struct Superoperator {
    int fock_dim;
    Mat entries;
};

struct Trajectory {
    std::vector<Mat> states;  // states[0] is the initial state
    std::vector<std::string> warnings;
};

enum class Stepper { recursion, kraus };

// rho' = rho + sum_mu eps_mu [K' rho K'^dag - 1/2 {K'^dag K', rho}].
// Exactly trace- and Hermiticity-preserving.
Mat recursion_step(const Mat& rho, const std::vector<EngineeredChannel>& channels);

// rho' = sum_j M_j rho M_j^dag with M_0 = I - 1/2 sum_mu eps_mu K'^dag K',
// M_mu = -i sqrt(eps_mu) K'.
Mat kraus_step(const Mat& rho, const std::vector<EngineeredChannel>& channels);

// Oracle for the second-order expansion: builds the joint Hamiltonian on the
// (d_levels - 1) x Fock space, applies exp(-i H tau) exactly with the pulse
// area taken from each spec, and partial-traces the electronic levels.
// Requires d_levels - 2 == specs.size(); the electronic state starts in |0><0|.
Mat exact_joint_step(const Mat& rho, const std::vector<ChannelSpec>& specs,
                     int d_levels, const FockSpace& space);

// N applications of the chosen stepper, recording every intermediate state.
// Positivity below the -1e-8 floor raises an integrity error while all eps
// stay within the 0.1 guard; above the guard it is reported as a warning.
Trajectory evolve(const Mat& rho0, const std::vector<EngineeredChannel>& channels,
                  int n_stages, Stepper stepper = Stepper::recursion);

// L = sum_mu eps_mu [conj(K') (x) K' - 1/2 (I (x) K'^dag K' + (K'^dag K')^T (x) I)]
// under column-stacking vectorization.
Superoperator liouvillian(const FockSpace& space,
                          const std::vector<EngineeredChannel>& channels);

// unvec(exp(N L) vec(rho0)), Hermitized to absorb roundoff.
Mat propagate_vectorized(const Mat& rho0, const Superoperator& l, int n_stages);

// Same map through one eigendecomposition of L, for sweeping many stage
// counts against a fixed channel set. Throws when the eigenbasis is too
// ill-conditioned to reproduce states faithfully.
class SpectralPropagator {
  public:
    explicit SpectralPropagator(const Superoperator& l);

    Mat at(const Mat& rho0, int n_stages) const;

  private:
    int fock_dim_;
    Vec eigenvalues_;
    Mat vectors_;
    Eigen::PartialPivLU<Mat> lu_;
};

struct SteadyState {
    Mat rho;
    // Set when the kernel state leans on the top of the truncated space
    // (pure heating lands here by construction).
    bool truncation_dominated;
};

// Unit-trace Hermitian kernel vector of L, from the full eigendecomposition;
// eigenvalues of the state in [-1e-8, 0) are clamped to zero and the state
// renormalized. Throws on a degenerate (dim > 1) or trace-zero kernel.
SteadyState steady_state(const Superoperator& l);

Vec vectorize(const Mat& rho);
Mat unvectorize(const Vec& v, int dim);

} // namespace pmre::collision
