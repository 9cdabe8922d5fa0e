#include <doctest.h>

#include <cmath>

#include "pmre/expm.hpp"

using namespace pmre;

TEST_CASE("exp(0) = I") {
    const Mat z = Mat::Zero(5, 5);
    CHECK((matrix_exponential(z) - Mat::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("diagonal matrices exponentiate entrywise") {
    Mat d = Mat::Zero(3, 3);
    d(0, 0) = Cplx(0.3, -1.1);
    d(1, 1) = Cplx(-2.0, 0.4);
    d(2, 2) = Cplx(4.0, 2.0);
    const Mat e = matrix_exponential(d);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(e(i, i) - std::exp(d(i, i))) < 1e-13 * std::abs(std::exp(d(i, i))));
    CHECK(std::abs(e(0, 1)) == 0.0);
}

TEST_CASE("nilpotent block") {
    Mat n = Mat::Zero(2, 2);
    n(0, 1) = 3.0;
    const Mat e = matrix_exponential(n);
    CHECK(e(0, 0) == Cplx(1.0));
    CHECK(e(0, 1) == Cplx(3.0));
    CHECK(e(1, 1) == Cplx(1.0));
}

TEST_CASE("anti-Hermitian generator gives a unitary") {
    Mat a(4, 4);
    a.setZero();
    a(0, 1) = Cplx(0.0, 2.0);
    a(1, 0) = Cplx(0.0, 2.0);
    a(2, 3) = Cplx(1.5, 0.7);
    a(3, 2) = Cplx(-1.5, 0.7);
    const Mat u = matrix_exponential(a);
    CHECK((u * u.adjoint() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("agrees with the eigendecomposition route on a Hermitian input") {
    Mat h(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) h(i, j) = Cplx(std::sin(1.0 + i * j), 0.0);
    h = ((h + h.adjoint()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Mat ref = Mat::Zero(6, 6);
    for (int k = 0; k < 6; ++k)
        ref += std::exp(es.eigenvalues()(k)) * es.eigenvectors().col(k) *
               es.eigenvectors().col(k).adjoint();
    const Mat e = matrix_exponential(h);
    CHECK((e - ref).cwiseAbs().maxCoeff() < 1e-12 * ref.cwiseAbs().maxCoeff());
}

TEST_CASE("exp(A) exp(-A) = I under scaling and squaring") {
    Mat a(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            a(i, j) = Cplx(std::cos(0.7 * i + 1.3 * j), std::sin(0.4 * i - j)) * 1.7;
    const Mat e = matrix_exponential(a) * matrix_exponential(-a);
    CHECK((e - Mat::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("rejects non-square and non-finite input") {
    CHECK_THROWS_AS(matrix_exponential(Mat::Zero(2, 3)), std::invalid_argument);
    Mat bad = Mat::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(matrix_exponential(bad), std::invalid_argument);
}
