#include "pmre/types.hpp"

#include <cmath>

namespace pmre {

StateIntegrity state_integrity(const Mat& rho) {
    StateIntegrity out;
    out.trace_error = std::abs(rho.trace() - Cplx(1.0, 0.0));
    out.herm_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Mat> es((rho + rho.adjoint()) / 2.0);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    return out;
}

void require_density_matrix(const Mat& rho, const std::string& label) {
    if (rho.rows() != rho.cols())
        throw std::runtime_error(label + ": density matrix must be square");
    if (!rho.allFinite())
        throw std::runtime_error(label + ": non-finite entries");
    const StateIntegrity s = state_integrity(rho);
    if (s.herm_error > kHermTol)
        throw std::runtime_error(label + ": Hermiticity violation " +
                                 std::to_string(s.herm_error));
    if (s.trace_error > kTraceTol)
        throw std::runtime_error(label + ": trace deviates from 1 by " +
                                 std::to_string(s.trace_error));
    if (s.min_eigenvalue < kPositivityFloor)
        throw std::runtime_error(label + ": eigenvalue below positivity floor: " +
                                 std::to_string(s.min_eigenvalue));
}

} // namespace pmre
