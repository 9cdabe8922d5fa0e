#include "pmre/lasers.hpp"

#include <cmath>

#include "pmre/fock.hpp"

namespace pmre::lasers {

void validate_line(const LaserLine& line) {
    if (std::abs(line.m) > kMaxSidebandOrder)
        throw std::invalid_argument("LaserLine: |m| > 4 is unsupported");
    if (line.rabi_ratio < 0.0)
        throw std::invalid_argument("LaserLine: rabi_ratio must be >= 0");
    if (!(line.eta > 0.0) || line.eta > 0.5)
        throw std::invalid_argument("LaserLine: eta must lie in (0, 0.5]");
}

void validate_spec(const ChannelSpec& spec) {
    if (spec.lines.empty())
        throw std::invalid_argument("ChannelSpec: needs at least one line");
    for (const auto& line : spec.lines) validate_line(line);
    if (!(spec.lines.front().rabi_ratio > 0.0))
        throw std::invalid_argument("ChannelSpec: anchor line needs rabi_ratio > 0");
    if (!(spec.tau_r_omega_r > 0.0))
        throw std::invalid_argument("ChannelSpec: tau_r_omega_r must be > 0");
}

Mat sideband_operator(const FockSpace& space, int m, double eta) {
    validate_line({m, 1.0, eta});
    const int am = std::abs(m);
    const int dim = space.dim;
    const Mat a = fock::annihilation(space);
    const Mat ad = a.adjoint();

    // a^{|m|}; a banded power, zero once |m| exceeds the space
    Mat right = Mat::Identity(dim, dim);
    for (int p = 0; p < am; ++p) right = right * a;
    Mat left = Mat::Identity(dim, dim);

    // coeff_k = (i eta)^{2k+|m|} / (k! (k+|m|)!)
    Cplx coeff = std::pow(Cplx(0.0, eta), am);
    for (int p = 2; p <= am; ++p) coeff /= static_cast<double>(p);

    Mat result = Mat::Zero(dim, dim);
    for (int k = 0; k + am <= dim - 1; ++k) {
        if (k > 0) {
            left = left * ad;
            right = right * a;  // a^{k+|m|} since right started at a^{|m|}
            coeff *= Cplx(0.0, eta) * Cplx(0.0, eta) /
                     static_cast<double>(k * (k + am));
        }
        result += coeff * (left * right);
    }
    result *= std::exp(-0.5 * eta * eta);

    if (m < 0) {
        result = result.adjoint().eval();
        if (am % 2 != 0) result = -result;
    }
    return result;
}

Mat engineering_operator(const FockSpace& space, const std::vector<LaserLine>& lines) {
    if (lines.empty())
        throw std::invalid_argument("engineering_operator: no lines");
    Mat k = Mat::Zero(space.dim, space.dim);
    for (const auto& line : lines) {
        validate_line(line);
        k += line.rabi_ratio * sideband_operator(space, line.m, line.eta);
    }
    return k;
}

EngineeredChannel rescale_channel(const FockSpace& space, const ChannelSpec& spec) {
    validate_spec(spec);
    const LaserLine& anchor = spec.lines.front();
    if (std::abs(anchor.m) != 1)
        throw std::invalid_argument("rescale_channel: first line must be the m = +-1 anchor");

    const double eta = anchor.eta;
    const Cplx scale = Cplx(0.0, eta) * std::exp(-0.5 * eta * eta) * anchor.rabi_ratio;

    EngineeredChannel out;
    out.k_prime = engineering_operator(space, spec.lines) / scale;
    const double s = anchor.rabi_ratio * spec.tau_r_omega_r * eta;
    out.epsilon = s * s * std::exp(-eta * eta);
    return out;
}

namespace {

ChannelSpec single_channel(std::vector<LaserLine> lines, double tau) {
    return ChannelSpec{std::move(lines), tau};
}

double imaginary_magnitude(Cplx alpha, const char* what) {
    if (std::abs(alpha.real()) > 1e-12 || alpha.imag() < 0.0)
        throw std::invalid_argument(std::string(what) +
                                    ": alpha must be pure imaginary with Im >= 0");
    return alpha.imag();
}

} // namespace

std::vector<ChannelSpec> table1_preset(PresetKind kind, const PresetParams& p) {
    const double eta = p.eta;
    const double tau = p.tau_r_omega_r;
    switch (kind) {
        case PresetKind::cooling:
            return {single_channel({{1, 1.0, eta}}, tau)};
        case PresetKind::heating:
            return {single_channel({{-1, 1.0, eta}}, tau)};
        case PresetKind::coherent: {
            const double amag = imaginary_magnitude(p.alpha, "coherent preset");
            return {single_channel({{1, 1.0, eta}, {0, amag * eta, eta}}, tau)};
        }
        case PresetKind::squeezed: {
            if (p.r < 0.0)
                throw std::invalid_argument("squeezed preset: r must be >= 0");
            if (std::abs(std::tanh(p.r)) >= 1.0)
                throw std::invalid_argument("squeezed preset: |tanh r| must be < 1");
            return {single_channel({{1, 1.0, eta}, {-1, std::tanh(p.r), eta}}, tau)};
        }
        case PresetKind::squeezed_coherent: {
            if (p.r < 0.0)
                throw std::invalid_argument("squeezed_coherent preset: r must be >= 0");
            const double amag = imaginary_magnitude(p.alpha, "squeezed_coherent preset");
            return {single_channel(
                {{1, 1.0, eta}, {-1, std::tanh(p.r), eta}, {0, amag * eta, eta}}, tau)};
        }
        case PresetKind::thermal_pair: {
            if (!(p.nbar > 0.0))
                throw std::invalid_argument("thermal_pair preset: nbar must be > 0");
            // eps_1/eps_2 = 1 + 1/nbar fixes the detailed-balance occupation.
            const double ratio2 = 1.0 / std::sqrt(1.0 + 1.0 / p.nbar);
            return {single_channel({{1, 1.0, eta}}, tau),
                    single_channel({{-1, ratio2, eta}}, tau)};
        }
    }
    throw std::logic_error("table1_preset: unknown kind");
}

} // namespace pmre::lasers
