#include "pmre/otto.hpp"

#include <cmath>
#include <stdexcept>

#include "pmre/fock.hpp"
#include "pmre/metrics.hpp"

namespace pmre::otto {

namespace {

constexpr double kDenomGuard = 1e-12;
constexpr double kZeroWorkTol = 1e-12;

void validate(const OttoParams& p) {
    if (!(p.nu0 > 0.0) || !(p.nu1 > 0.0))
        throw std::invalid_argument("OttoParams: trap frequencies must be > 0");
    if (p.nbar_A < 0.0)
        throw std::invalid_argument("OttoParams: nbar_A must be >= 0");
}

double theta_at(const OttoParams& p, int j) {
    if (p.theta.empty()) return 0.0;
    if (j < static_cast<int>(p.theta.size())) return p.theta[j];
    return p.theta.back();
}

// chi numerator for the thermal-A / coherent-C state pair:
// 2 Re(kappa_1 alpha*) + sinh(2r) Re(alpha*^2), in units of nu1.
double coherence_sum(const OttoParams& p) {
    const double r = squeeze_param(p.nu0, p.nu1);
    const Cplx ac = std::conj(p.alpha);
    return 2.0 * std::real(kappa1(p) * ac) +
           std::sinh(2.0 * r) * std::real(ac * ac);
}

} // namespace

double squeeze_param(double nu0, double nu1) {
    if (!(nu0 > 0.0) || !(nu1 > 0.0))
        throw std::invalid_argument("squeeze_param: frequencies must be > 0");
    return 0.5 * std::log(nu1 / nu0);
}

Cplx kappa1(const OttoParams& params) {
    const double r = squeeze_param(params.nu0, params.nu1);
    return params.zeta_over_nu1 * std::cosh(r) +
           std::conj(params.zeta_over_nu1) * std::sinh(r);
}

double chi_closed_form(const OttoParams& params) {
    validate(params);
    const double nbar_c = std::norm(params.alpha);
    const double denom = params.nbar_A - nbar_c;
    if (std::abs(denom) < kDenomGuard)
        throw std::invalid_argument("chi_closed_form: nbar_A too close to |alpha|^2");
    const double r = squeeze_param(params.nu0, params.nu1);
    return coherence_sum(params) / (std::cosh(2.0 * r) * denom);
}

ChiComponents chi_general(const Mat& p_a, const Mat& q_c, const OttoParams& params) {
    validate(params);
    if (p_a.rows() != q_c.rows())
        throw std::invalid_argument("chi_general: dimension mismatch");
    const int dim = static_cast<int>(p_a.rows());
    const double r = squeeze_param(params.nu0, params.nu1);
    const double s2 = std::sinh(2.0 * r);
    const Cplx kap = kappa1(params);

    Cplx a1 = 0.0, a2 = 0.0, c1 = 0.0, c2 = 0.0;
    for (int j = 0; j + 1 < dim; ++j) {
        const double w = std::sqrt(j + 1.0);
        const Cplx phase =
            std::exp(Cplx(0.0, theta_at(params, j + 1) - theta_at(params, j)));
        a1 += p_a(j, j + 1) * phase * w;
        c1 += q_c(j, j + 1) * w;
    }
    for (int j = 0; j + 2 < dim; ++j) {
        const double w = std::sqrt((j + 1.0) * (j + 2.0));
        const Cplx phase =
            std::exp(Cplx(0.0, theta_at(params, j + 2) - theta_at(params, j)));
        a2 += p_a(j, j + 2) * phase * w;
        c2 += q_c(j, j + 2) * w;
    }

    ChiComponents out;
    out.chi_a1 = 2.0 * params.nu1 * std::real(kap * a1);
    out.chi_a2 = params.nu1 * s2 * std::real(a2);
    out.chi_c1 = 2.0 * params.nu1 * std::real(kap * c1);
    out.chi_c2 = params.nu1 * s2 * std::real(c2);

    const double nbar_a = metrics::mean_occupation(p_a);
    const double nbar_c = metrics::mean_occupation(q_c);
    const double denom =
        params.nu1 * std::cosh(2.0 * r) * (nbar_a - nbar_c);
    if (std::abs(nbar_a - nbar_c) < kDenomGuard)
        throw std::invalid_argument("chi_general: nbar_A too close to nbar_C");
    out.chi = (out.chi_c1 + out.chi_c2 - out.chi_a1 - out.chi_a2) / denom;
    return out;
}

CycleEnergetics energetics_closed(const OttoParams& params) {
    validate(params);
    const double r = squeeze_param(params.nu0, params.nu1);
    const double c2 = std::cosh(2.0 * r);
    const double nbar_c = std::norm(params.alpha);
    const double zsq = std::norm(params.zeta_over_nu1);
    const double dn = params.nbar_A - nbar_c;
    // coherence contribution chi * nu1 cosh(2r) * dn, finite at dn = 0
    const double s = params.nu1 * coherence_sum(params);

    CycleEnergetics e;
    e.w1 = params.nu1 * c2 * (params.nbar_A + 0.5) + params.nu1 * zsq -
           params.nu0 * (params.nbar_A + 0.5);
    e.w3 = params.nu0 * (nbar_c + 0.5) - params.nu1 * c2 * (nbar_c + 0.5) -
           params.nu1 * zsq - s;
    e.q2 = -params.nu1 * c2 * dn + s;
    e.q4 = params.nu0 * dn;
    return e;
}

NumericEnergetics energetics_numeric(const Mat& rho_a, const Mat& rho_c,
                                     const OttoParams& params, const FockSpace& space) {
    validate(params);
    if (rho_a.rows() != space.dim || rho_c.rows() != space.dim)
        throw std::invalid_argument("energetics_numeric: states do not match the space");

    const double r = squeeze_param(params.nu0, params.nu1);
    const Mat a0 = fock::annihilation(space);
    const Mat a1 = std::cosh(r) * a0 + std::sinh(r) * a0.adjoint() +
                   params.zeta_over_nu1 * fock::identity(space);
    const Mat h1 =
        params.nu1 * (a1.adjoint() * a1 + 0.5 * fock::identity(space));
    const Mat h0 =
        params.nu0 * (fock::number_operator(space) + 0.5 * fock::identity(space));

    // quench phases on rho_A: Theta rho_A Theta^dag with Theta = diag(e^{-i theta_j})
    Mat rho_a_quenched = rho_a;
    if (!params.theta.empty()) {
        Vec phases(space.dim);
        for (int j = 0; j < space.dim; ++j)
            phases(j) = std::exp(Cplx(0.0, -theta_at(params, j)));
        rho_a_quenched = phases.asDiagonal() * rho_a * phases.conjugate().asDiagonal();
    }

    const double tr_a1 = (rho_a_quenched * h1).trace().real();
    const double tr_a0 = (rho_a * h0).trace().real();
    const double tr_c1 = (rho_c * h1).trace().real();
    const double tr_c0 = (rho_c * h0).trace().real();

    NumericEnergetics out;
    out.energetics.w1 = tr_a1 - tr_a0;
    out.energetics.q2 = tr_c1 - tr_a1;
    out.energetics.w3 = tr_c0 - tr_c1;
    out.energetics.q4 = tr_a0 - tr_c0;
    out.nbar_c_numeric = metrics::mean_occupation(rho_c);
    out.tail_mass_a = metrics::tail_mass(rho_a, 2);
    out.tail_mass_c = metrics::tail_mass(rho_c, 2);
    out.truncation_warning = out.tail_mass_a > kTailMassThreshold ||
                             out.tail_mass_c > kTailMassThreshold;
    return out;
}

EfficiencyResult efficiency_from_chi(double nu0, double nu1, double chi,
                                     int delta_n_sign) {
    const double r = squeeze_param(nu0, nu1);
    const double c2 = std::cosh(2.0 * r);
    const double sech2 = 1.0 / c2;
    const double chi_zero_work = 1.0 - (nu0 / nu1) * sech2;

    if (std::abs(chi - chi_zero_work) <= kZeroWorkTol)
        return {0.0, Regime::zero_work};
    if (delta_n_sign > 0) {
        if (chi >= 1.0) return {1.0, Regime::engine};
        if (chi > chi_zero_work)
            return {1.0 - nu1 * c2 * (1.0 - chi) / nu0, Regime::engine};
        return {std::nullopt, Regime::no_engine};
    }
    if (delta_n_sign < 0) {
        if (chi < chi_zero_work)
            return {1.0 - nu0 * sech2 / (nu1 * (1.0 - chi)), Regime::engine};
        return {std::nullopt, Regime::no_engine};
    }
    return {std::nullopt, Regime::no_engine};  // nbar_A = nbar_C carries no work
}

EfficiencyResult efficiency(const OttoParams& params) {
    const double nbar_c = std::norm(params.alpha);
    const double dn = params.nbar_A - nbar_c;
    if (dn == 0.0) return {std::nullopt, Regime::no_engine};
    const double chi = chi_closed_form(params);
    return efficiency_from_chi(params.nu0, params.nu1, chi, dn > 0.0 ? 1 : -1);
}

double otto_reference(double nu0, double nu1) {
    if (!(nu0 > 0.0) || !(nu1 > 0.0))
        throw std::invalid_argument("otto_reference: frequencies must be > 0");
    if (nu0 == nu1)
        throw std::invalid_argument("otto_reference: frequencies must differ");
    return 1.0 - std::min(nu1 / nu0, nu0 / nu1);
}

ChiThresholds chi_thresholds(double nu0, double nu1) {
    const double r = squeeze_param(nu0, nu1);
    const double sech2 = 1.0 / std::cosh(2.0 * r);
    const double a = 1.0 - sech2;
    const double b = 1.0 - (nu0 / nu1) * (nu0 / nu1) * sech2;

    ChiThresholds t;
    t.zero_work = 1.0 - (nu0 / nu1) * sech2;
    if (nu1 < nu0) {
        t.surpass_high = a;
        t.surpass_low = b;
    } else {
        t.surpass_high = b;
        t.surpass_low = a;
    }
    return t;
}

} // namespace pmre::otto
