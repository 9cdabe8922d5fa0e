#include "pmre/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace pmre::metrics {

namespace {

// Eigenvalues below dim*eps*lambda_max are numerical noise; taking their
// square root would pollute the result at the sqrt(eps) scale, so they are
// zeroed along with the tolerated negative tail.
double noise_cut(const Eigen::VectorXd& ev) {
    const double lmax = std::max(ev.maxCoeff(), 0.0);
    return static_cast<double>(ev.size()) *
           std::numeric_limits<double>::epsilon() * lmax;
}

// Hermitian square root; eigenvalues below `floor` signal a genuinely
// non-PSD input.
Mat psd_sqrt(const Mat& m, double floor, const char* label) {
    Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
    Eigen::VectorXd ev = es.eigenvalues();
    const double cut = noise_cut(ev);
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < floor)
            throw std::runtime_error(std::string(label) +
                                     ": eigenvalue below positivity floor: " +
                                     std::to_string(ev(i)));
        ev(i) = ev(i) > cut ? std::sqrt(ev(i)) : 0.0;
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

double fidelity(const Mat& rho, const Mat& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw std::invalid_argument("fidelity: dimension mismatch");

    // Tr sqrt(sqrt(rho) sigma sqrt(rho)) equals the trace norm of
    // sqrt(sigma) sqrt(rho); the Jacobi SVD keeps small singular values at
    // high relative accuracy, which the eigenvalues of the sandwiched product
    // would lose.
    const Mat m = psd_sqrt(sigma, kPositivityFloor, "fidelity(sigma)") *
                  psd_sqrt(rho, kPositivityFloor, "fidelity(rho)");
    Eigen::JacobiSVD<Mat> svd(m);
    const double sum = svd.singularValues().sum();
    return sum * sum;
}

double mean_occupation(const Mat& rho) {
    double n = 0.0;
    for (int j = 0; j < rho.rows(); ++j) n += j * rho(j, j).real();
    return n;
}

double trace_distance(const Mat& rho, const Mat& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    const Mat d = ((rho - sigma) + (rho - sigma).adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(d);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double tail_mass(const Mat& rho, int k) {
    const int dim = static_cast<int>(rho.rows());
    if (k < 0 || k >= dim)
        throw std::invalid_argument("tail_mass: need 0 <= k < dim");
    double mass = 0.0;
    for (int j = dim - k; j < dim; ++j) mass += rho(j, j).real();
    return mass;
}

} // namespace pmre::metrics
