// expm.hpp: dense matrix exponential by scaling and squaring of a truncated series.

#pragma once

#include "pmre/types.hpp"

namespace pmre {

// exp(A) for a dense complex square matrix. Scales A by 2^-s until the 1-norm
// is below 0.25, sums the Taylor series to machine precision, squares s times.
Mat matrix_exponential(const Mat& a);

} // namespace pmre
