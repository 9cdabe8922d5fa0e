#include <doctest.h>

#include <cmath>

#include "pmre/fock.hpp"
#include "pmre/lasers.hpp"

using namespace pmre;
using namespace pmre::lasers;

namespace {
constexpr double kEta = 0.05;

Mat table_operator(const FockSpace& space, double t, Cplx alpha) {
    // a + t a^dag - alpha I, the Lamb-Dicke leading form of the table rows
    const Mat a = fock::annihilation(space);
    return a + t * a.adjoint() - alpha * Mat::Identity(space.dim, space.dim);
}
} // namespace

TEST_CASE("first sideband entry matches the k = 0 series term") {
    const FockSpace space(8);
    const Mat d1 = sideband_operator(space, 1, kEta);
    const Cplx expected = Cplx(0.0, kEta) * std::exp(-0.5 * kEta * kEta);
    CHECK(std::abs(d1(0, 1) - expected) < 1e-15);
    CHECK(std::abs(expected - Cplx(0.0, 0.0499376)) < 1e-7);
    CHECK(std::abs(d1(1, 0)) == 0.0);
}

TEST_CASE("second sideband (0,2) entry") {
    const FockSpace space(8);
    const Mat d2 = sideband_operator(space, 2, kEta);
    const Cplx expected =
        Cplx(0.0, kEta) * Cplx(0.0, kEta) * std::exp(-0.5 * kEta * kEta) * std::sqrt(2.0) / 2.0;
    CHECK(std::abs(d2(0, 2) - expected) < 1e-15);
    CHECK(std::abs(expected - Cplx(-0.0017655586, 0.0)) < 1e-10);
}

TEST_CASE("carrier approaches the identity as eta -> 0") {
    const FockSpace space(10);
    const Mat d0 = sideband_operator(space, 0, 1e-8);
    CHECK((d0 - Mat::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("adjoint-with-sign relation between m and -m") {
    const FockSpace space(12);
    for (int m = 0; m <= 4; ++m) {
        const Mat plus = sideband_operator(space, m, kEta);
        const Mat minus = sideband_operator(space, -m, kEta);
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        CHECK((minus - sign * plus.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("rejects unsupported orders and eta out of range") {
    const FockSpace space(8);
    CHECK_THROWS_AS(sideband_operator(space, 5, kEta), std::invalid_argument);
    CHECK_THROWS_AS(sideband_operator(space, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sideband_operator(space, 1, 0.6), std::invalid_argument);
}

TEST_CASE("engineering operator sums sign-selected sidebands") {
    const FockSpace space(8);
    const Mat single = engineering_operator(space, {{1, 0.7, kEta}});
    CHECK((single - 0.7 * sideband_operator(space, 1, kEta)).cwiseAbs().maxCoeff() == 0.0);

    // {m=1, m=-1 at ratio t}: leading Lamb-Dicke content i eta (a + t a^dag)
    const double t = 0.3;
    const Mat k = engineering_operator(space, {{1, 1.0, kEta}, {-1, t, kEta}});
    const Cplx lead = Cplx(0.0, kEta) * std::exp(-0.5 * kEta * kEta);
    CHECK(std::abs(k(0, 1) - lead) < 1e-15);
    CHECK(std::abs(k(1, 0) - t * lead) < 1e-15);

    // {m=1, m=0 at ratio rho2}: leading content i eta a + rho2 I
    const double rho2 = 0.02;
    const Mat kc = engineering_operator(space, {{1, 1.0, kEta}, {0, rho2, kEta}});
    CHECK(std::abs(kc(0, 0) - rho2 * std::exp(-0.5 * kEta * kEta)) < 1e-12);
    CHECK(std::abs(kc(0, 1) - lead) < 1e-15);
}

TEST_CASE("rescale_channel: epsilon value and exact anchor normalization") {
    const FockSpace space(10);
    const ChannelSpec cooling{{{1, 1.0, kEta}}, 4.5};
    const auto ch = rescale_channel(space, cooling);

    // eps = (ratio1 * tau * eta)^2 e^{-eta^2}
    const double expected = 4.5 * 4.5 * kEta * kEta * std::exp(-kEta * kEta);
    CHECK(ch.epsilon == doctest::Approx(expected).epsilon(1e-15));
    CHECK(ch.epsilon == doctest::Approx(0.0504986).epsilon(1e-6));
    CHECK(std::abs(ch.k_prime(0, 1) - Cplx(1.0)) < 1e-15);
}

TEST_CASE("rescale_channel rejects a missing anchor") {
    const FockSpace space(10);
    CHECK_THROWS_AS(rescale_channel(space, ChannelSpec{{{0, 1.0, kEta}}, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(rescale_channel(space, ChannelSpec{{{1, 0.0, kEta}}, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("squeezing channel at ratio 0.11 reproduces a + 0.11 a^dag to O(eta^2)") {
    const FockSpace space(10);
    const ChannelSpec spec{{{1, 1.0, kEta}, {-1, 0.11, kEta}}, 1.0};
    const auto ch = rescale_channel(space, spec);
    const Mat ref = table_operator(space, 0.11, 0.0);
    const double bound = 5.0 * kEta * kEta * ref.cwiseAbs().maxCoeff();
    CHECK((ch.k_prime - ref).cwiseAbs().maxCoeff() <= bound);
}

TEST_CASE("Table 1 presets match their target operators to O(eta^2)") {
    const FockSpace space(10);
    PresetParams p;
    p.eta = kEta;
    p.tau_r_omega_r = 4.5;

    struct Row {
        PresetKind kind;
        double t;
        Cplx alpha;
    };
    p.r = 0.11;
    p.alpha = Cplx(0.0, 0.48);
    p.nbar = 0.25;
    const std::vector<Row> rows = {
        {PresetKind::cooling, 0.0, 0.0},
        {PresetKind::coherent, 0.0, Cplx(0.0, 0.48)},
        {PresetKind::squeezed, std::tanh(0.11), 0.0},
        {PresetKind::squeezed_coherent, std::tanh(0.11), Cplx(0.0, 0.48)},
    };
    for (const auto& row : rows) {
        const auto specs = table1_preset(row.kind, p);
        REQUIRE(specs.size() == 1);
        const auto ch = rescale_channel(space, specs.front());
        const Mat ref = table_operator(space, row.t, row.alpha);
        const double bound = 5.0 * kEta * kEta * ref.cwiseAbs().maxCoeff();
        CHECK((ch.k_prime - ref).cwiseAbs().maxCoeff() <= bound);
    }

    // heating: (-1)^1 d_1^dag rescales to a^dag at leading order
    const auto heat = rescale_channel(space, table1_preset(PresetKind::heating, p).front());
    const Mat adag = fock::creation(space);
    CHECK((heat.k_prime - adag).cwiseAbs().maxCoeff() <=
          5.0 * kEta * kEta * adag.cwiseAbs().maxCoeff());
}

TEST_CASE("thermal pair carries the detailed-balance increment ratio") {
    const FockSpace space(10);
    PresetParams p;
    p.eta = kEta;
    p.tau_r_omega_r = 4.5;
    p.nbar = 0.25;
    const auto specs = table1_preset(PresetKind::thermal_pair, p);
    REQUIRE(specs.size() == 2);
    const auto c1 = rescale_channel(space, specs[0]);
    const auto c2 = rescale_channel(space, specs[1]);
    CHECK(c1.epsilon / c2.epsilon == doctest::Approx(5.0).epsilon(1e-12));

    CHECK_THROWS_AS(table1_preset(PresetKind::thermal_pair, PresetParams{}),
                    std::invalid_argument);
}

TEST_CASE("epsilon is invariant under compensated rescaling of the drive") {
    const FockSpace space(8);
    for (const double c : {0.5, 2.0, 7.3}) {
        const ChannelSpec base{{{1, 1.0, kEta}, {-1, 0.4, kEta}}, 3.0};
        ChannelSpec scaled = base;
        for (auto& line : scaled.lines) line.rabi_ratio *= c;
        scaled.tau_r_omega_r /= c;
        const auto a = rescale_channel(space, base);
        const auto b = rescale_channel(space, scaled);
        CHECK(a.epsilon == doctest::Approx(b.epsilon).epsilon(1e-12));
        CHECK((a.k_prime - b.k_prime).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("presets reject invalid parameters") {
    PresetParams p;
    p.alpha = Cplx(0.3, 0.1);  // not pure imaginary
    CHECK_THROWS_AS(table1_preset(PresetKind::coherent, p), std::invalid_argument);
    PresetParams q;
    q.r = -0.2;
    CHECK_THROWS_AS(table1_preset(PresetKind::squeezed, q), std::invalid_argument);
}
