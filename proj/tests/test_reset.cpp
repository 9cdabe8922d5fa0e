#include <doctest.h>

#include <cmath>

#include "pmre/reset.hpp"

using namespace pmre;
using namespace pmre::reset;

namespace {

ElectronicState level_state(int j) {
    ElectronicState rho = ElectronicState::Zero();
    rho(j, j) = 1.0;
    return rho;
}

double time_to_ground(double omega, double threshold) {
    const ResetParams params{omega, 1.0};
    const auto series = reset_step(level_state(1), 1, params, 12.0 / params.gamma_eff(),
                                   0.005, 20);
    for (const auto& s : series.samples)
        if (s.rho(0, 0).real() >= threshold) return s.t;
    return -1.0;
}

} // namespace

TEST_CASE("zero drive leaves the state constant") {
    const ResetParams params{0.0, 1.0};
    ElectronicState rho = ElectronicState::Zero();
    rho(1, 1) = 0.7;
    rho(2, 2) = 0.3;
    rho(1, 2) = Cplx(0.1, 0.05);
    rho(2, 1) = std::conj(rho(1, 2));
    const auto series = reset_step(rho, 1, params, 50.0, 0.005, 1000);
    CHECK((series.samples.back().rho - rho).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("fitted pumping rate matches 4 omega^2 / gamma in the adiabatic regime") {
    for (const double omega : {0.02, 0.05}) {
        const ResetParams params{omega, 1.0};
        const auto series =
            reset_step(level_state(1), 1, params, 3.2 / params.gamma_eff(), 0.005, 50);
        const double rate = fit_decay_rate(series, 1);
        CHECK(std::abs(rate - params.gamma_eff()) / params.gamma_eff() <= 0.05);
    }
}

TEST_CASE("at omega/gamma = 0.2 the adiabatic rate is off by more than 5 percent") {
    const ResetParams params{0.2, 1.0};
    const auto series =
        reset_step(level_state(1), 1, params, 3.2 / params.gamma_eff(), 0.005, 10);
    CHECK(series.adiabatic_warning);
    const double rate = fit_decay_rate(series, 1);
    CHECK(std::abs(rate - params.gamma_eff()) / params.gamma_eff() > 0.05);
}

TEST_CASE("level 2 sector is stationary during a target-1 step") {
    const ResetParams params{0.05, 1.0};
    ElectronicState rho = ElectronicState::Zero();
    rho(1, 1) = 0.5;
    rho(2, 2) = 0.5;
    rho(0, 2) = Cplx(0.05, -0.02);
    rho(2, 0) = std::conj(rho(0, 2));
    const auto series = reset_step(rho, 1, params, 200.0, 0.005, 100);
    for (const auto& s : series.samples) {
        CHECK(std::abs(s.rho(2, 2) - rho(2, 2)) < 1e-10);
        CHECK(std::abs(s.rho(0, 2) - rho(0, 2)) < 1e-10);
    }
    CHECK(std::abs(series.samples.back().rho(2, 2) - rho(2, 2)) < 1e-6);
}

TEST_CASE("integrator preserves trace and Hermiticity over long runs") {
    const ResetParams params{0.05, 1.0};
    const auto series = reset_step(level_state(1), 1, params, 1e4, 0.005, 5000);
    for (const auto& s : series.samples) {
        CHECK(std::abs(s.rho.trace() - Cplx(1.0)) < 1e-8);
        CHECK((s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("full reset leaves |0><0| untouched and purifies a level-1/2 mixture") {
    const ResetParams params{0.05, 1.0};
    CHECK((full_reset(level_state(0), params) - level_state(0)).cwiseAbs().maxCoeff() <
          1e-12);

    ElectronicState mixed = ElectronicState::Zero();
    mixed(1, 1) = 0.5;
    mixed(2, 2) = 0.5;
    const ElectronicState out = full_reset(mixed, params);
    CHECK(out(0, 0).real() >= 0.999);
}

TEST_CASE("doubling the drive quarters the time to reach 0.999 ground population") {
    const double t_slow = time_to_ground(0.04, 0.999);
    const double t_fast = time_to_ground(0.08, 0.999);
    REQUIRE(t_slow > 0.0);
    REQUIRE(t_fast > 0.0);
    const double ratio = t_slow / t_fast;
    CHECK(ratio > 3.6);
    CHECK(ratio < 4.4);
}

TEST_CASE("parameter validation") {
    const ResetParams params{0.05, 1.0};
    const auto rho = level_state(1);
    CHECK_THROWS_AS(reset_step(rho, 1, params, -1.0, 0.005), std::invalid_argument);
    CHECK_THROWS_AS(reset_step(rho, 1, params, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(reset_step(rho, 1, params, 1.0, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(reset_step(rho, 3, params, 1.0, 0.005), std::invalid_argument);
    CHECK_THROWS_AS(reset_step(rho, 1, ResetParams{0.3, 1.0}, 1.0, 0.005),
                    std::invalid_argument);
}
