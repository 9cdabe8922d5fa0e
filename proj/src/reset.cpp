#include "pmre/reset.hpp"

#include <cmath>
#include <stdexcept>

namespace pmre::reset {

namespace {

void validate_params(const ResetParams& p) {
    if (p.omega_tilde < 0.0)
        throw std::invalid_argument("ResetParams: omega_tilde must be >= 0");
    if (!(p.gamma30 > 0.0))
        throw std::invalid_argument("ResetParams: gamma30 must be > 0");
    if (p.omega_tilde / p.gamma30 > 0.2)
        throw std::invalid_argument(
            "ResetParams: omega_tilde/gamma30 > 0.2 invalidates the adiabatic elimination");
}

// -i [H_Q, rho] + Gamma_30 (|0><3| rho |3><0| - 1/2 {|3><3|, rho})
ElectronicState master_rhs(const ElectronicState& rho, double omega, double gamma,
                           int target) {
    ElectronicState h = ElectronicState::Zero();
    h(3, target) = omega;
    h(target, 3) = omega;

    ElectronicState out = Cplx(0.0, -1.0) * (h * rho - rho * h);
    const Cplx r33 = rho(3, 3);
    out(0, 0) += gamma * r33;
    for (int j = 0; j < 4; ++j) {
        out(3, j) -= 0.5 * gamma * rho(3, j);
        out(j, 3) -= 0.5 * gamma * rho(j, 3);
    }
    return out;
}

} // namespace

ResetSeries reset_step(const ElectronicState& rho_e, int target_level,
                       const ResetParams& params, double t_end, double dt,
                       int sample_every) {
    validate_params(params);
    if (target_level != 1 && target_level != 2)
        throw std::invalid_argument("reset_step: target_level must be 1 or 2");
    if (!(t_end > 0.0)) throw std::invalid_argument("reset_step: t_end must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("reset_step: dt must be > 0");
    if (dt > 0.01 / params.gamma30)
        throw std::invalid_argument("reset_step: dt must be <= 0.01/gamma30");
    if (sample_every < 1) sample_every = 1;

    ResetSeries series;
    series.adiabatic_warning = params.omega_tilde / params.gamma30 > 0.1;

    const double omega = params.omega_tilde;
    const double gamma = params.gamma30;
    const long n_steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));

    ElectronicState rho = rho_e;
    series.samples.push_back({0.0, rho});
    for (long n = 1; n <= n_steps; ++n) {
        const ElectronicState k1 = master_rhs(rho, omega, gamma, target_level);
        const ElectronicState k2 =
            master_rhs(rho + 0.5 * dt * k1, omega, gamma, target_level);
        const ElectronicState k3 =
            master_rhs(rho + 0.5 * dt * k2, omega, gamma, target_level);
        const ElectronicState k4 = master_rhs(rho + dt * k3, omega, gamma, target_level);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (n % sample_every == 0 || n == n_steps)
            series.samples.push_back({n * dt, rho});
    }
    return series;
}

ElectronicState full_reset(const ElectronicState& rho_e, const ResetParams& params,
                           double t_per_step, double dt) {
    validate_params(params);
    if (params.omega_tilde == 0.0)
        throw std::invalid_argument("full_reset: omega_tilde must be > 0");
    if (t_per_step <= 0.0) t_per_step = 8.0 / params.gamma_eff();
    if (dt <= 0.0) dt = kDefaultDtGamma / params.gamma30;

    ElectronicState rho = rho_e;
    for (int target : {1, 2}) {
        // only the endpoint matters here
        const auto series = reset_step(rho, target, params, t_per_step, dt, 1 << 30);
        rho = series.samples.back().rho;
    }
    return rho;
}

double fit_decay_rate(const ResetSeries& series, int level) {
    if (level < 0 || level > 3)
        throw std::invalid_argument("fit_decay_rate: level out of range");
    // linear regression of log population over the [0.05, 0.8] window,
    // skipping the adiabatic-elimination transient near t = 0
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long count = 0;
    for (const auto& s : series.samples) {
        const double p = s.rho(level, level).real();
        if (p < 0.05 || p > 0.8) continue;
        const double y = std::log(p);
        sx += s.t;
        sy += y;
        sxx += s.t * s.t;
        sxy += s.t * y;
        ++count;
    }
    if (count < 2)
        throw std::runtime_error("fit_decay_rate: fewer than two samples in the fit window");
    const double denom = count * sxx - sx * sx;
    if (std::abs(denom) < 1e-300)
        throw std::runtime_error("fit_decay_rate: degenerate fit window");
    return -(count * sxy - sx * sy) / denom;
}

} // namespace pmre::reset
