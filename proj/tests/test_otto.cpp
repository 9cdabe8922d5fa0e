#include <doctest.h>

#include <cmath>

#include "pmre/fock.hpp"
#include "pmre/otto.hpp"

using namespace pmre;
using namespace pmre::otto;

namespace {

OttoParams reference_point() {
    OttoParams p;
    p.nu0 = 1.0;
    p.nu1 = 0.8;
    p.nbar_A = 0.25;
    p.alpha = Cplx(0.0, 0.4);
    return p;
}

} // namespace

TEST_CASE("squeeze parameter and the cosh(2r) identity") {
    CHECK(squeeze_param(1.0, 1.0) == 0.0);
    CHECK(squeeze_param(1.0, 0.8) == doctest::Approx(-0.111572).epsilon(1e-5));
    // nu1 cosh(2r)/nu0 = ((nu1/nu0)^2 + 1)/2
    const double r = squeeze_param(1.0, 0.8);
    CHECK(0.8 * std::cosh(2.0 * r) == doctest::Approx(0.82).epsilon(1e-12));
}

TEST_CASE("kappa1 limits") {
    OttoParams p = reference_point();
    CHECK(std::abs(kappa1(p)) == 0.0);

    const double r = squeeze_param(1.0, 0.8);
    p.zeta_over_nu1 = 0.3;
    CHECK(std::abs(kappa1(p) - 0.3 * std::exp(r)) < 1e-14);

    p.zeta_over_nu1 = Cplx(0.0, 0.3);
    CHECK(std::abs(kappa1(p) - Cplx(0.0, 0.3 * std::exp(-r))) < 1e-14);
}

TEST_CASE("closed-form chi at the reference point") {
    const OttoParams p = reference_point();
    // tanh(2r) = -9/41 and Re(alpha*^2) = -0.16 give chi = 16/41
    CHECK(chi_closed_form(p) == doctest::Approx(16.0 / 41.0).epsilon(1e-12));
    CHECK(chi_closed_form(p) == doctest::Approx(0.390244).epsilon(1e-5));
}

TEST_CASE("chi vanishes without coherences and rejects a vanishing denominator") {
    OttoParams p = reference_point();
    p.alpha = 0.0;
    CHECK(chi_closed_form(p) == 0.0);

    p.alpha = Cplx(0.0, 0.5);  // |alpha|^2 = nbar_A
    CHECK_THROWS_AS(chi_closed_form(p), std::invalid_argument);
}

TEST_CASE("a real displacement is invisible to chi for an imaginary alpha") {
    // Re(kappa_1 alpha*) = 0 when zeta/nu1 is real and alpha imaginary
    OttoParams p = reference_point();
    const double chi0 = chi_closed_form(p);
    p.zeta_over_nu1 = 0.37;
    CHECK(chi_closed_form(p) == doctest::Approx(chi0).epsilon(1e-12));
}

TEST_CASE("chi_general: thermal coefficients kill the A-sums, coherent matches closed form") {
    const FockSpace space(60);
    const OttoParams p = reference_point();
    const Mat pa = fock::thermal_state(space, p.nbar_A);
    const Mat qc = fock::coherent_state(space, p.alpha);

    const auto c = chi_general(pa, qc, p);
    CHECK(c.chi_a1 == 0.0);
    CHECK(c.chi_a2 == 0.0);
    CHECK(std::abs(c.chi - chi_closed_form(p)) < 1e-9);

    OttoParams pz = p;
    pz.zeta_over_nu1 = Cplx(0.0, 0.2);
    const auto cz = chi_general(pa, qc, pz);
    CHECK(std::abs(cz.chi - chi_closed_form(pz)) < 1e-9);

    // no off-diagonals at all: chi = 0
    const auto c0 = chi_general(pa, fock::thermal_state(space, 0.05), p);
    CHECK(c0.chi == 0.0);
}

TEST_CASE("closed energetics at the derived reference point") {
    const auto e = energetics_closed(reference_point());
    CHECK(e.total_work() == doctest::Approx(-0.045).epsilon(1e-12));
    CHECK(e.q2 == doctest::Approx(-0.045).epsilon(1e-12));
    CHECK(e.q4 == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(std::abs(e.closure()) < 1e-15);
}

TEST_CASE("closed energetics: vacuum to vacuum exchanges only stroke work") {
    OttoParams p;
    p.nu1 = 0.8;
    p.nbar_A = 0.0;
    p.alpha = 0.0;
    const auto e = energetics_closed(p);
    const double r = squeeze_param(1.0, 0.8);
    CHECK(e.q2 == 0.0);
    CHECK(e.q4 == 0.0);
    CHECK(e.w1 == doctest::Approx(0.5 * (0.8 * std::cosh(2.0 * r) - 1.0)).epsilon(1e-14));
    CHECK(e.w3 == doctest::Approx(-e.w1).epsilon(1e-14));
}

TEST_CASE("numeric energetics agree with the closed forms at dim 60") {
    const FockSpace space(60);
    OttoParams p = reference_point();
    p.zeta_over_nu1 = Cplx(0.0, 0.2);
    const auto closed = energetics_closed(p);
    const auto num = energetics_numeric(fock::thermal_state(space, p.nbar_A),
                                        fock::coherent_state(space, p.alpha), p, space);
    CHECK(std::abs(num.energetics.w1 - closed.w1) < 1e-6);
    CHECK(std::abs(num.energetics.q2 - closed.q2) < 1e-6);
    CHECK(std::abs(num.energetics.w3 - closed.w3) < 1e-6);
    CHECK(std::abs(num.energetics.q4 - closed.q4) < 1e-6);
    CHECK(std::abs(num.energetics.closure()) < 1e-9);
    CHECK_FALSE(num.truncation_warning);
    CHECK(num.nbar_c_numeric == doctest::Approx(0.16).epsilon(1e-9));
}

TEST_CASE("a constant quench-phase offset leaves the numeric energetics unchanged") {
    const FockSpace space(40);
    OttoParams p = reference_point();
    const Mat pa = fock::coherent_state(space, Cplx(0.2, 0.1));  // carries coherences
    const Mat qc = fock::coherent_state(space, p.alpha);
    const auto base = energetics_numeric(pa, qc, p, space);
    p.theta.assign(40, 0.77);
    const auto shifted = energetics_numeric(pa, qc, p, space);
    CHECK(std::abs(base.energetics.w1 - shifted.energetics.w1) < 1e-12);
    CHECK(std::abs(base.energetics.q2 - shifted.energetics.q2) < 1e-12);
}

TEST_CASE("nonuniform quench phases act on the A-state coherences") {
    const FockSpace space(40);
    OttoParams p = reference_point();
    p.zeta_over_nu1 = Cplx(0.0, 0.2);
    const Mat pa = fock::coherent_state(space, Cplx(0.3, 0.0));
    const Mat qc = fock::coherent_state(space, p.alpha);
    const auto base = energetics_numeric(pa, qc, p, space);
    p.theta.resize(40);
    for (int j = 0; j < 40; ++j) p.theta[j] = 0.3 * j;
    const auto shifted = energetics_numeric(pa, qc, p, space);
    CHECK(std::abs(base.energetics.w1 - shifted.energetics.w1) > 1e-4);
    // closure holds regardless of the phases
    CHECK(std::abs(shifted.energetics.closure()) < 1e-12);
    // and chi_general applies the same phases
    const auto c0 = chi_general(pa, qc, reference_point());
    const auto c1 = chi_general(pa, qc, p);
    CHECK(std::abs(c0.chi_a1 - c1.chi_a1) > 1e-6);
}

TEST_CASE("efficiency at the derived point is exactly one half") {
    const auto eff = efficiency(reference_point());
    REQUIRE(eff.value.has_value());
    CHECK(*eff.value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(eff.regime == Regime::engine);
}

TEST_CASE("efficiency piecewise cases") {
    // chi >= 1 with hot-to-cold population flow saturates at unity
    auto unit = efficiency_from_chi(1.0, 0.8, 1.2, 1);
    REQUIRE(unit.value.has_value());
    CHECK(*unit.value == 1.0);

    // continuity across chi = 1
    auto near = efficiency_from_chi(1.0, 0.8, 1.0 - 1e-9, 1);
    REQUIRE(near.value.has_value());
    CHECK(std::abs(*near.value - 1.0) < 1e-8);

    // the zero-work threshold
    const double r = squeeze_param(1.0, 0.8);
    const double chi_zw = 1.0 - (1.0 / 0.8) / std::cosh(2.0 * r);
    auto zw = efficiency_from_chi(1.0, 0.8, chi_zw, 1);
    CHECK(zw.regime == Regime::zero_work);
    CHECK(*zw.value == 0.0);

    // below it with nbar_A > nbar_C the cycle consumes work
    auto dead = efficiency_from_chi(1.0, 0.8, chi_zw - 0.1, 1);
    CHECK(dead.regime == Regime::no_engine);
    CHECK_FALSE(dead.value.has_value());

    // cold-to-hot flow extracts work below the threshold
    auto rev = efficiency_from_chi(1.0, 0.8, chi_zw - 0.1, -1);
    CHECK(rev.regime == Regime::engine);
    REQUIRE(rev.value.has_value());
    CHECK(*rev.value > 0.0);
}

TEST_CASE("quasi-static degeneracy: r = 0 and chi = 0 reduce to the reference") {
    // equal frequencies give r = 0; with no displacement and chi = 0 the
    // engine formula collapses to 1 - nu1/nu0
    auto eff = efficiency_from_chi(1.0, 0.8, 0.0, 1);
    const double r = squeeze_param(1.0, 0.8);
    REQUIRE(eff.value.has_value());
    CHECK(*eff.value == doctest::Approx(1.0 - 0.8 * std::cosh(2.0 * r)).epsilon(1e-12));
    // and with the squeezing term removed analytically the value is 1 - nu1/nu0
    CHECK(1.0 - 0.8 * 1.0 == doctest::Approx(otto_reference(1.0, 0.8)).epsilon(1e-12));
}

TEST_CASE("otto reference bound") {
    CHECK(otto_reference(1.0, 0.8) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(otto_reference(1.0, 5.0 / 3.0) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(otto_reference(1.0, 0.8) == doctest::Approx(otto_reference(0.8, 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(otto_reference(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("chi thresholds reproduce the surpass boundaries") {
    const auto t1 = chi_thresholds(1.0, 0.8);
    CHECK(t1.surpass_high == doctest::Approx(2.44e-2).epsilon(5e-3));
    CHECK(t1.surpass_low == doctest::Approx(-5.24e-1).epsilon(5e-3));

    const auto t2 = chi_thresholds(1.0, 0.6);
    CHECK(t2.surpass_high == doctest::Approx(1.18e-1).epsilon(5e-3));
    CHECK(t2.surpass_low == doctest::Approx(-1.45).epsilon(5e-3));

    const auto t3 = chi_thresholds(1.0, 5.0 / 3.0);
    CHECK(t3.surpass_high == doctest::Approx(6.82e-1).epsilon(5e-3));
    CHECK(t3.surpass_low == doctest::Approx(1.18e-1).epsilon(5e-3));
}

TEST_CASE("the efficiency beats the reference exactly inside the surpass region") {
    for (const double ratio : {0.6, 0.8, 1.0 / 0.6}) {
        const auto th = chi_thresholds(1.0, ratio);
        const double e_otto = otto_reference(1.0, ratio);
        for (int i = 0; i < 100; ++i) {
            const double chi = -2.0005 + 4.0 * i / 99.0;  // avoids exact boundaries
            auto eff = efficiency_from_chi(1.0, ratio, chi, 1);
            if (eff.regime != Regime::engine)
                eff = efficiency_from_chi(1.0, ratio, chi, -1);
            const bool surpass =
                eff.regime == Regime::engine && eff.value && *eff.value > e_otto;
            const bool in_region = chi > th.surpass_high || chi < th.surpass_low;
            CHECK(surpass == in_region);
        }
    }
}
