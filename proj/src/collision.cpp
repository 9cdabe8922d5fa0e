#include "pmre/collision.hpp"

#include <cmath>
#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "pmre/expm.hpp"
#include "pmre/metrics.hpp"

namespace pmre::collision {

namespace {

void check_channels(const Mat& rho, const std::vector<EngineeredChannel>& channels) {
    for (const auto& ch : channels) {
        if (ch.k_prime.rows() != rho.rows() || ch.k_prime.cols() != rho.cols())
            throw std::invalid_argument("channel operator does not match the state space");
        if (ch.epsilon < 0.0)
            throw std::invalid_argument("channel epsilon must be >= 0");
    }
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace

Vec vectorize(const Mat& rho) {
    return Eigen::Map<const Vec>(rho.data(), rho.size());
}

Mat unvectorize(const Vec& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim)
        throw std::invalid_argument("unvectorize: length is not dim^2");
    return Eigen::Map<const Mat>(v.data(), dim, dim);
}

Mat recursion_step(const Mat& rho, const std::vector<EngineeredChannel>& channels) {
    check_channels(rho, channels);
    Mat out = rho;
    for (const auto& ch : channels) {
        const Mat kdk = ch.k_prime.adjoint() * ch.k_prime;
        out += ch.epsilon * (ch.k_prime * rho * ch.k_prime.adjoint() -
                             0.5 * (kdk * rho + rho * kdk));
    }
    return out;
}

Mat kraus_step(const Mat& rho, const std::vector<EngineeredChannel>& channels) {
    check_channels(rho, channels);
    Mat m0 = Mat::Identity(rho.rows(), rho.cols());
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (const auto& ch : channels) {
        m0 -= 0.5 * ch.epsilon * (ch.k_prime.adjoint() * ch.k_prime);
        const Mat mk = Cplx(0.0, -1.0) * std::sqrt(ch.epsilon) * ch.k_prime;
        out += mk * rho * mk.adjoint();
    }
    out += m0 * rho * m0.adjoint();
    return out;
}

Mat exact_joint_step(const Mat& rho, const std::vector<ChannelSpec>& specs,
                     int d_levels, const FockSpace& space) {
    if (d_levels - 2 != static_cast<int>(specs.size()))
        throw std::invalid_argument("exact_joint_step: d_levels - 2 must equal the channel count");
    const int ne = d_levels - 1;  // levels |0>..|d-2> take part in the engineering
    const int dim = space.dim;
    if (rho.rows() != dim)
        throw std::invalid_argument("exact_joint_step: state does not match the space");

    const double area = specs.front().tau_r_omega_r;
    for (const auto& s : specs) {
        validate_spec(s);
        if (std::abs(s.tau_r_omega_r - area) > 1e-15)
            throw std::invalid_argument("exact_joint_step: one joint pulse needs a common pulse area");
    }

    Mat h = Mat::Zero(ne * dim, ne * dim);
    for (int mu = 1; mu <= static_cast<int>(specs.size()); ++mu) {
        const Mat k = lasers::engineering_operator(space, specs[mu - 1].lines);
        Mat pu = Mat::Zero(ne, ne);
        pu(mu, 0) = 1.0;
        h += kron(pu, k) + kron(pu.adjoint(), k.adjoint());
    }

    const Mat u = matrix_exponential(Cplx(0.0, -1.0) * area * h);
    Mat joint = Mat::Zero(ne * dim, ne * dim);
    joint.block(0, 0, dim, dim) = rho;  // electronic state |0><0|
    joint = u * joint * u.adjoint();

    Mat out = Mat::Zero(dim, dim);
    for (int e = 0; e < ne; ++e)
        out += joint.block(e * dim, e * dim, dim, dim);
    return out;
}

Trajectory evolve(const Mat& rho0, const std::vector<EngineeredChannel>& channels,
                  int n_stages, Stepper stepper) {
    if (n_stages < 0) throw std::invalid_argument("evolve: n_stages must be >= 0");
    check_channels(rho0, channels);

    bool within_guard = true;
    for (const auto& ch : channels)
        if (ch.epsilon > lasers::kEpsilonGuard) within_guard = false;

    Trajectory traj;
    traj.states.reserve(n_stages + 1);
    traj.states.push_back(rho0);

    Mat rho = rho0;
    for (int n = 1; n <= n_stages; ++n) {
        rho = (stepper == Stepper::recursion) ? recursion_step(rho, channels)
                                              : kraus_step(rho, channels);
        const StateIntegrity s = state_integrity(rho);
        if (s.min_eigenvalue < kPositivityFloor) {
            const std::string msg = "stage " + std::to_string(n) +
                                    ": eigenvalue " + std::to_string(s.min_eigenvalue) +
                                    " below the positivity floor";
            if (within_guard)
                throw std::runtime_error(
                    "evolve integrity error (" + msg +
                    "); epsilon too large for this truncation");
            traj.warnings.push_back(msg);
        }
        traj.states.push_back(rho);
    }
    return traj;
}

Superoperator liouvillian(const FockSpace& space,
                          const std::vector<EngineeredChannel>& channels) {
    const int dim = space.dim;
    const Mat id = Mat::Identity(dim, dim);
    Mat l = Mat::Zero(dim * dim, dim * dim);
    for (const auto& ch : channels) {
        if (ch.k_prime.rows() != dim)
            throw std::invalid_argument("liouvillian: channel does not match the space");
        const Mat kdk = ch.k_prime.adjoint() * ch.k_prime;
        l += ch.epsilon * (kron(ch.k_prime.conjugate(), ch.k_prime) -
                           0.5 * (kron(id, kdk) + kron(kdk.transpose(), id)));
    }
    return Superoperator{dim, std::move(l)};
}

Mat propagate_vectorized(const Mat& rho0, const Superoperator& l, int n_stages) {
    if (n_stages < 0)
        throw std::invalid_argument("propagate_vectorized: n_stages must be >= 0");
    if (rho0.rows() != l.fock_dim)
        throw std::invalid_argument("propagate_vectorized: state does not match the superoperator");
    if (n_stages == 0) return rho0;
    const Mat prop = matrix_exponential(static_cast<double>(n_stages) * l.entries);
    const Mat rho = unvectorize(prop * vectorize(rho0), l.fock_dim);
    return (rho + rho.adjoint()) / 2.0;
}

SpectralPropagator::SpectralPropagator(const Superoperator& l) : fock_dim_(l.fock_dim) {
    const int n = fock_dim_ * fock_dim_;
    Mat a = l.entries;
    eigenvalues_.resize(n);
    vectors_.resize(n, n);
    const int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n, eigenvalues_.data(),
                      nullptr, 1, vectors_.data(), n);
    if (info != 0)
        throw std::runtime_error("SpectralPropagator: zgeev failed with info " +
                                 std::to_string(info));
    lu_.compute(vectors_);
}

Mat SpectralPropagator::at(const Mat& rho0, int n_stages) const {
    if (n_stages < 0)
        throw std::invalid_argument("SpectralPropagator: n_stages must be >= 0");
    if (rho0.rows() != fock_dim_)
        throw std::invalid_argument("SpectralPropagator: state does not match the space");
    Vec coeff = lu_.solve(vectorize(rho0));
    // the eigenbasis can be nearly parallel in the truncation corner; require
    // only that this particular state is represented faithfully
    const double recon =
        (vectors_ * coeff - vectorize(rho0)).cwiseAbs().maxCoeff();
    if (recon > 1e-8)
        throw std::runtime_error(
            "SpectralPropagator: state not representable in the eigenbasis (residual " +
            std::to_string(recon) + ")");
    for (Eigen::Index i = 0; i < coeff.size(); ++i)
        coeff(i) *= std::exp(static_cast<double>(n_stages) * eigenvalues_(i));
    const Mat rho = unvectorize(vectors_ * coeff, fock_dim_);
    return (rho + rho.adjoint()) / 2.0;
}

SteadyState steady_state(const Superoperator& l) {
    const int dim = l.fock_dim;
    const int n = dim * dim;

    // max row sum, the operator infinity-norm of L
    const double scale = l.entries.cwiseAbs().rowwise().sum().maxCoeff();
    const double tol = 1e-10 * std::max(scale, 1.0);

    Mat a = l.entries;  // zgeev overwrites its input
    Vec w(n);
    Mat vr(n, n);
    const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n,
                                   w.data(), nullptr, 1, vr.data(), n);
    if (info != 0)
        throw std::runtime_error("steady_state: zgeev failed with info " +
                                 std::to_string(info));

    int kernel_count = 0;
    int best = 0;
    double best_mag = std::abs(w(0));
    for (int i = 0; i < n; ++i) {
        const double mag = std::abs(w(i));
        if (mag < tol) ++kernel_count;
        if (mag < best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (kernel_count > 1)
        throw std::runtime_error("steady_state: degenerate kernel (dimension " +
                                 std::to_string(kernel_count) + ")");
    if (best_mag >= tol)
        throw std::runtime_error("steady_state: no eigenvalue within kernel tolerance");

    Mat rho = unvectorize(vr.col(best), dim);
    rho = (rho + rho.adjoint()) / 2.0;

    const Cplx tr = rho.trace();
    if (std::abs(tr) < 1e-10 * rho.cwiseAbs().maxCoeff() * dim)
        throw std::runtime_error("steady_state: kernel vector has zero trace");
    rho /= tr;

    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    Eigen::VectorXd ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < kPositivityFloor)
            throw std::runtime_error("steady_state: kernel state eigenvalue " +
                                     std::to_string(ev(i)) +
                                     " below the positivity floor");
        if (ev(i) < 0.0) ev(i) = 0.0;
    }
    rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    rho /= rho.trace().real();

    SteadyState out{std::move(rho), false};
    out.truncation_dominated = metrics::tail_mass(out.rho, 2) > kTailMassThreshold;
    return out;
}

} // namespace pmre::collision
