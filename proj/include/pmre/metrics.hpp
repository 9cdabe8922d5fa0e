// metrics.hpp: state comparison and diagnostics.

#pragma once

#include "pmre/types.hpp"

namespace pmre::metrics {

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 via Hermitian
// eigendecompositions. Eigenvalues down to the -1e-8 positivity floor are
// clamped to zero; anything below signals a non-PSD input.
double fidelity(const Mat& rho, const Mat& sigma);

// Tr(a^dag a rho).
double mean_occupation(const Mat& rho);

// 1/2 sum |eigenvalues(rho - sigma)|.
double trace_distance(const Mat& rho, const Mat& sigma);

// Sum of the top-k diagonal populations (k < dim).
double tail_mass(const Mat& rho, int k);

} // namespace pmre::metrics
