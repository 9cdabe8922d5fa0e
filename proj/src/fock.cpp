#include "pmre/fock.hpp"

#include <cmath>

#include "pmre/expm.hpp"

namespace pmre::fock {

Mat annihilation(const FockSpace& space) {
    Mat a = Mat::Zero(space.dim, space.dim);
    for (int j = 0; j + 1 < space.dim; ++j)
        a(j, j + 1) = std::sqrt(static_cast<double>(j + 1));
    return a;
}

Mat creation(const FockSpace& space) { return annihilation(space).adjoint(); }

Mat number_operator(const FockSpace& space) {
    Mat n = Mat::Zero(space.dim, space.dim);
    for (int j = 0; j < space.dim; ++j) n(j, j) = static_cast<double>(j);
    return n;
}

Mat identity(const FockSpace& space) { return Mat::Identity(space.dim, space.dim); }

Mat displacement(const FockSpace& space, Cplx alpha) {
    const Mat a = annihilation(space);
    return matrix_exponential(alpha * a.adjoint() - std::conj(alpha) * a);
}

Mat squeeze(const FockSpace& space, double r) {
    const Mat a = annihilation(space);
    const Mat ad = a.adjoint();
    return matrix_exponential(0.5 * r * (ad * ad - a * a));
}

Mat number_state(const FockSpace& space, int j) {
    if (j < 0 || j >= space.dim)
        throw std::invalid_argument("number_state: level outside the truncated space");
    Mat rho = Mat::Zero(space.dim, space.dim);
    rho(j, j) = 1.0;
    return rho;
}

namespace {

Mat projector(const Vec& psi) { return psi * psi.adjoint(); }

Vec vacuum(const FockSpace& space) {
    Vec v = Vec::Zero(space.dim);
    v(0) = 1.0;
    return v;
}

} // namespace

Mat coherent_state(const FockSpace& space, Cplx alpha) {
    return projector(displacement(space, alpha) * vacuum(space));
}

Mat squeezed_coherent_state(const FockSpace& space, double r, Cplx alpha) {
    const Vec psi = squeeze(space, -r) * (displacement(space, alpha) * vacuum(space));
    return projector(psi);
}

Mat thermal_state(const FockSpace& space, double nbar) {
    if (nbar < 0.0) throw std::invalid_argument("thermal_state: nbar must be >= 0");
    Mat rho = Mat::Zero(space.dim, space.dim);
    if (nbar == 0.0) {
        rho(0, 0) = 1.0;
        return rho;
    }
    double sum = 0.0;
    double p = 1.0 / (nbar + 1.0);
    const double ratio = nbar / (nbar + 1.0);
    for (int j = 0; j < space.dim; ++j) {
        rho(j, j) = p;
        sum += p;
        p *= ratio;
    }
    rho /= sum;
    return rho;
}

} // namespace pmre::fock
