// fock.hpp: ladder operators, unitary state-preparation operators, and canonical
// states on the truncated Fock space.

#pragma once

#include "pmre/types.hpp"

namespace pmre::fock {

// a: entries (j, j+1) = sqrt(j+1).
Mat annihilation(const FockSpace& space);
// a^dag.
Mat creation(const FockSpace& space);
// a^dag a.
Mat number_operator(const FockSpace& space);
Mat identity(const FockSpace& space);

// D(alpha) = exp(alpha a^dag - conj(alpha) a). Unitary up to truncation; the
// caller keeps |alpha|^2 well below dim (see metrics::tail_mass).
Mat displacement(const FockSpace& space, Cplx alpha);

// S(r) = exp[(r/2)(a^dag^2 - a^2)], real r.
Mat squeeze(const FockSpace& space, double r);

// |j><j|
Mat number_state(const FockSpace& space, int j);
// D(alpha)|0><0|D(alpha)^dag
Mat coherent_state(const FockSpace& space, Cplx alpha);
// S(-r) D(alpha) |0>, projector form.
Mat squeezed_coherent_state(const FockSpace& space, double r, Cplx alpha);
// Diagonal p_jj = nbar^j / (nbar+1)^{j+1}, renormalized over the truncated
// space. Rejects nbar < 0.
Mat thermal_state(const FockSpace& space, double nbar);

} // namespace pmre::fock
