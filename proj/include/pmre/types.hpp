// types.hpp: shared aliases, the truncated Fock space, and density-matrix integrity checks.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pmre {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kHermTol = 1e-12;        // max elementwise |rho - rho^dag|
constexpr double kTraceTol = 1e-10;       // |Tr rho - 1|
constexpr double kPositivityFloor = -1e-8; // smallest tolerated eigenvalue
constexpr double kTailMassThreshold = 1e-8;

// Number of retained Fock levels |0> ... |dim-1>.
struct FockSpace {
    int dim;

    explicit FockSpace(int d) : dim(d) {
        if (d < 2) throw std::invalid_argument("FockSpace: dim must be >= 2");
    }
};

struct StateIntegrity {
    double trace_error{0.0};
    double herm_error{0.0};
    double min_eigenvalue{0.0};

    bool ok() const {
        return trace_error <= kTraceTol && herm_error <= kHermTol &&
               min_eigenvalue >= kPositivityFloor;
    }
};

StateIntegrity state_integrity(const Mat& rho);

// Throws std::runtime_error with a labelled message if rho violates the
// Hermiticity / unit-trace / positivity tolerances.
void require_density_matrix(const Mat& rho, const std::string& label = "state");

} // namespace pmre
