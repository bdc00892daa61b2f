#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ghl/elliptic.hpp"
#include "ghl/quadrature.hpp"
#include "support.hpp"

using ghl::cx;
using ghl::CutSide;
using ghl::EllipticConvention;

namespace {
double cerr(cx got, cx want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_CASE("carlson_rf matches frozen 40-digit references") {
    CHECK(testsup::rel_err(ghl::carlson_rf(0.0, 1.0, 2.0).real(), 1.3110287771460599052) < 5e-14);
    CHECK(cerr(ghl::carlson_rf(1.0, cx(2.0, 1.0), 4.0),
               cx(0.67346053464319453355, -0.053177443339456682915)) < 5e-14);
    CHECK(testsup::rel_err(ghl::carlson_rf(3.0, 4.0, 5.0).real(), 0.50320944317733088687) < 5e-14);
    // Equal arguments short-circuit to 1/sqrt(a).
    CHECK(ghl::carlson_rf(4.0, 4.0, 4.0) == cx(0.5, 0.0));
}

TEST_CASE("carlson_rd matches frozen 40-digit references") {
    CHECK(testsup::rel_err(ghl::carlson_rd(0.0, 2.0, 1.0).real(), 1.7972103521033883112) < 5e-14);
    CHECK(cerr(ghl::carlson_rd(1.0, cx(2.0, 1.0), 4.0),
               cx(0.21134153177154558195, -0.028080050068939115262)) < 5e-14);
    CHECK(testsup::rel_err(ghl::carlson_rd(3.0, 4.0, 5.0).real(), 0.110503643475707013) < 5e-14);
}

TEST_CASE("negative real arguments resolve the cut by the sign of zero") {
    const cx below(-0.5, -0.0);
    const cx above(-0.5, +0.0);
    const cx rf_below = ghl::carlson_rf(2.0, below, 1.0);
    const cx rf_above = ghl::carlson_rf(2.0, above, 1.0);
    CHECK(cerr(rf_below, cx(1.1242019597966657589, 0.40436700510489125212)) < 5e-14);
    CHECK(cerr(rf_above, std::conj(rf_below)) < 1e-15);
    CHECK(cerr(ghl::carlson_rd(2.0, below, 1.0),
               cx(1.0526606192605984731, 0.93302404532874921661)) < 5e-14);
}

TEST_CASE("carlson symmetry, conjugation, and homogeneity") {
    const cx y(2.0, 1.0);
    const cx a = ghl::carlson_rf(1.0, y, 4.0);
    CHECK(cerr(ghl::carlson_rf(y, 4.0, 1.0), a) < 1e-14);
    CHECK(cerr(ghl::carlson_rf(4.0, 1.0, y), a) < 1e-14);
    CHECK(cerr(ghl::carlson_rf(1.0, std::conj(y), 4.0), std::conj(a)) < 1e-14);
    // RF is homogeneous of degree -1/2, RD of degree -3/2.
    CHECK(cerr(ghl::carlson_rf(12.0, 16.0, 20.0), ghl::carlson_rf(3.0, 4.0, 5.0) / 2.0) < 1e-13);
    CHECK(cerr(ghl::carlson_rd(12.0, 16.0, 20.0), ghl::carlson_rd(3.0, 4.0, 5.0) / 8.0) < 1e-13);
}

TEST_CASE("carlson degenerate arguments throw") {
    CHECK_THROWS_AS(ghl::carlson_rf(0.0, 0.0, 1.0), ghl::domain_error);
    CHECK_THROWS_AS(ghl::carlson_rd(1.0, 2.0, 0.0), ghl::domain_error);
    CHECK_THROWS_AS(ghl::carlson_rd(0.0, 0.0, 1.0), ghl::domain_error);
}

TEST_CASE("legendre integrals, modulus below the critical angle") {
    // k = 11/9 > 1 but 1 - k^2 sin^2(0.3) > 0, so values stay real.
    const double k = 11.0 / 9.0;
    const cx f = ghl::legendre_f(0.3, k);
    const cx e = ghl::legendre_e(0.3, k);
    CHECK(testsup::rel_err(f.real(), 0.30702521297203100244) < 5e-14);
    CHECK(std::fabs(f.imag()) < 1e-30);
    CHECK(testsup::rel_err(e.real(), 0.29326138449973652526) < 5e-14);
    CHECK(std::fabs(e.imag()) < 1e-30);
}

TEST_CASE("legendre integrals past the turning point pick the requested branch") {
    const double k = 11.0 / 9.0;
    const double phi = std::asin(10.0 / 11.0);
    const cx f_lo = ghl::legendre_f(phi, k, EllipticConvention::SinSquared, CutSide::Lower);
    const cx e_lo = ghl::legendre_e(phi, k, EllipticConvention::SinSquared, CutSide::Lower);
    CHECK(cerr(f_lo, cx(1.663036813345443605, 0.73125819112704007922)) < 5e-14);
    CHECK(cerr(e_lo, cx(0.71825534302915163095, -0.060267746271977501199)) < 5e-14);
    const cx f_up = ghl::legendre_f(phi, k, EllipticConvention::SinSquared, CutSide::Upper);
    const cx e_up = ghl::legendre_e(phi, k, EllipticConvention::SinSquared, CutSide::Upper);
    CHECK(cerr(f_up, std::conj(f_lo)) < 1e-14);
    CHECK(cerr(e_up, std::conj(e_lo)) < 1e-14);
}

TEST_CASE("legendre integrals agree with the defining integrals for real modulus") {
    const double k = 0.8, phi = 1.1;
    CHECK(testsup::rel_err(ghl::legendre_f(phi, k).real(), 1.2531631150294099234) < 1e-12);
    CHECK(testsup::rel_err(ghl::legendre_e(phi, k).real(), 0.97700193879689211025) < 1e-12);
    // Complete integrals at phi = pi/2.
    CHECK(testsup::rel_err(ghl::legendre_f(ghl::kPi / 2.0, k).real(), 1.9953027776647293877) <
          1e-12);
    CHECK(testsup::rel_err(ghl::legendre_e(ghl::kPi / 2.0, k).real(), 1.2763499431699064233) <
          1e-12);
}

TEST_CASE("cos-squared convention matches direct quadrature") {
    const double k = 0.8, phi = 0.4;
    const double f_ref = ghl::integrate(
        [&](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::cos(t) * std::cos(t)); }, 0.0,
        phi);
    const double e_ref = ghl::integrate(
        [&](double t) { return std::sqrt(1.0 - k * k * std::cos(t) * std::cos(t)); }, 0.0, phi);
    CHECK(testsup::rel_err(ghl::legendre_f(phi, k, EllipticConvention::CosSquared).real(), f_ref) <
          1e-10);
    CHECK(testsup::rel_err(ghl::legendre_e(phi, k, EllipticConvention::CosSquared).real(), e_ref) <
          1e-10);
}

TEST_CASE("legendre integrals are odd in the amplitude") {
    for (double k : {0.5, 11.0 / 9.0}) {
        CHECK(std::abs(ghl::legendre_f(-0.4, k) + ghl::legendre_f(0.4, k)) < 1e-15);
        CHECK(std::abs(ghl::legendre_e(-0.4, k) + ghl::legendre_e(0.4, k)) < 1e-15);
    }
    CHECK(std::abs(ghl::legendre_f(0.0, 0.7)) == 0.0);
    CHECK(std::abs(ghl::legendre_e(0.0, 0.7)) == 0.0);
}

TEST_CASE("legendre amplitude domain is limited to half a period") {
    CHECK_THROWS_AS(ghl::legendre_f(1.7, 0.5), ghl::domain_error);
    CHECK_THROWS_AS(ghl::legendre_e(-1.7, 0.5), ghl::domain_error);
    CHECK_NOTHROW(ghl::legendre_f(ghl::kPi / 2.0, 0.5));
}
