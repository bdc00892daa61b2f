#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "ghl/qmc.hpp"
#include "ghl/quadrature.hpp"
#include "support.hpp"

using testsup::rel_err;

TEST_CASE("radical inverse digit reversal in small bases") {
    CHECK(ghl::radical_inverse(0, 2) == 0.0);
    CHECK(ghl::radical_inverse(1, 2) == 0.5);
    CHECK(ghl::radical_inverse(2, 2) == 0.25);
    CHECK(ghl::radical_inverse(3, 2) == 0.75);
    CHECK(ghl::radical_inverse(4, 2) == 0.125);
    CHECK(rel_err(ghl::radical_inverse(1, 3), 1.0 / 3.0) < 1e-15);
    CHECK(rel_err(ghl::radical_inverse(2, 3), 2.0 / 3.0) < 1e-15);
    CHECK(rel_err(ghl::radical_inverse(3, 3), 1.0 / 9.0) < 1e-15);
    CHECK(rel_err(ghl::radical_inverse(5, 3), 7.0 / 9.0) < 1e-15);
    CHECK(ghl::nth_prime(0) == 2);
    CHECK(ghl::nth_prime(3) == 7);
    CHECK(ghl::nth_prime(25) == 101);
    CHECK_THROWS_AS(ghl::nth_prime(-1), ghl::config_error);
}

TEST_CASE("halton sequence leaps through the radical inverse streams") {
    ghl::HaltonSequence h(2, 1);
    double x[2];
    h.point(0, x);  // index 1
    CHECK(x[0] == 0.5);
    CHECK(rel_err(x[1], 1.0 / 3.0) < 1e-15);
    h.point(2, x);  // index 3
    CHECK(x[0] == 0.75);
    CHECK(rel_err(x[1], 1.0 / 9.0) < 1e-15);

    ghl::HaltonSequence leaped(1, 3);
    leaped.point(0, x);  // index 3 in base 2
    CHECK(x[0] == 0.75);

    // The leap must be coprime to every base in play.
    CHECK_THROWS_AS(ghl::HaltonSequence(1, 4), ghl::config_error);
    CHECK_THROWS_AS(ghl::HaltonSequence(3, 55), ghl::config_error);  // shares 5 with base 5
    CHECK_THROWS_AS(ghl::HaltonSequence(0, 1), ghl::config_error);
    CHECK_THROWS_AS(ghl::HaltonSequence(2, 0), ghl::config_error);
    CHECK_NOTHROW(ghl::HaltonSequence(8, 409));  // default leap clears the first 8 primes
}

TEST_CASE("korobov lattice construction") {
    ghl::Rank1Lattice lat(8, 3);
    CHECK(lat.n() == 8);
    // a = round(0.618 * 8) = 5: powers 1, 5, 25 mod 8.
    CHECK(lat.z() == std::vector<std::uint64_t>{1, 5, 1});
    const double shift[3] = {0.0, 0.0, 0.0};
    double x[3];
    lat.point(2, shift, x);
    CHECK(x[0] == 0.25);
    CHECK(x[1] == 0.25);  // (2*5) mod 8 = 2
    lat.point(8, shift, x);  // k = n wraps to the shift itself
    CHECK(x[0] == 0.0);
    const double quarter[3] = {0.75, 0.75, 0.75};
    lat.point(2, quarter, x);
    CHECK(x[0] == 0.0);  // 0.25 + 0.75 wraps
    CHECK_THROWS_AS(ghl::Rank1Lattice(1, 2), ghl::config_error);
    CHECK_THROWS_AS(ghl::Rank1Lattice(8, 0), ghl::config_error);
}

TEST_CASE("lattice generating vector from file") {
    const std::string path = "test_qmc_vector.txt";
    {
        std::ofstream out(path);
        out << "4\n1\n3\n";
    }
    ghl::Rank1Lattice lat(path, 2);
    CHECK(lat.n() == 4);
    CHECK(lat.z() == std::vector<std::uint64_t>{1, 3});
    const double shift[2] = {0.0, 0.0};
    double x[2];
    lat.point(2, shift, x);
    CHECK(x[0] == 0.5);
    CHECK(x[1] == 0.5);  // (2*3) mod 4 = 2

    CHECK_THROWS_AS(ghl::Rank1Lattice("no_such_vector_file.txt", 2), ghl::config_error);
    CHECK_THROWS_AS(ghl::Rank1Lattice(path, 3), ghl::config_error);  // vector too short
    {
        std::ofstream out(path);
        out << "1\n1\n";
    }
    CHECK_THROWS_AS(ghl::Rank1Lattice(path, 1), ghl::config_error);  // n < 2
    std::remove(path.c_str());
}

TEST_CASE("low-discrepancy points beat iid sampling on the proxy") {
    const int n = 512, dim = 2;
    std::vector<double> halton(n * dim), iid(n * dim);
    ghl::HaltonSequence seq(dim, 1);
    for (int i = 0; i < n; ++i) seq.point(static_cast<std::uint64_t>(i), halton.data() + i * dim);
    ghl::Rng rng(123);
    for (double& v : iid) v = rng.u01();
    const double dh = ghl::star_discrepancy_proxy(halton, dim);
    const double di = ghl::star_discrepancy_proxy(iid, dim);
    CHECK(dh < di);
    CHECK(dh < 0.02);
    CHECK_THROWS_AS(ghl::star_discrepancy_proxy(halton, 0), ghl::config_error);
    std::vector<double> ragged(5);
    CHECK_THROWS_AS(ghl::star_discrepancy_proxy(ragged, 2), ghl::config_error);
}

TEST_CASE("importance law for the hop advancement") {
    const double q0 = 0.19876159799998130635;  // boundary coefficient at gamma=10
    const ghl::ImportanceSampler s(30.0, 1.0, q0);
    CHECK(s.cdf(0.0) == 0.0);
    CHECK(s.cdf(1.0) == 1.0);
    CHECK(s.pdf(-0.1) == 0.0);
    CHECK(s.pdf(1.1) == 0.0);

    // Inverse-CDF round trip.
    double prev = -1.0;
    for (int i = 1; i <= 25; ++i) {
        const double t = i / 26.0;
        const double c = s.sample(t);
        CHECK(std::fabs(s.cdf(c) - t) < 1e-10);
        CHECK(c > prev);
        prev = c;
    }

    const double mass = ghl::integrate([&](double c) { return s.pdf(c); }, 0.0, 1.0, 1e-10);
    CHECK(rel_err(mass, 1.0) < 1e-8);

    // Truncated variant concentrates all mass below c_max.
    const ghl::ImportanceSampler trunc(30.0, 1.0, q0, 0.5);
    CHECK(trunc.cdf(0.5) == 1.0);
    CHECK(trunc.sample(0.999999) <= 0.5);
    const double mt = ghl::integrate([&](double c) { return trunc.pdf(c); }, 0.0, 0.5, 1e-10);
    CHECK(rel_err(mt, 1.0) < 1e-8);

    CHECK_THROWS_AS(ghl::ImportanceSampler(-1.0, 1.0, q0), ghl::domain_error);
    CHECK_THROWS_AS(ghl::ImportanceSampler(30.0, 1.0, q0, 1.5), ghl::domain_error);
    CHECK_THROWS_AS(ghl::ImportanceSampler(30.0, 1.0, q0, 0.0), ghl::domain_error);
}

TEST_CASE("replicate accumulation recovers uniform means under both rules") {
    ghl::QmcRule halton;
    halton.kind = ghl::RuleKind::Halton;
    halton.points = 4096;
    auto sums = ghl::replicate_accumulate(halton, 2, 2, [](const double* x, double* acc) {
        acc[0] += x[0];
        acc[1] += x[1];
    });
    for (std::size_t j = 0; j < 2; ++j) {
        const auto e = sums.component(j);
        CHECK(e.samples == 4096);
        CHECK(std::fabs(e.value - 0.5) < std::fmax(5.0 * e.std_error, 2e-3));
    }

    ghl::QmcRule lattice;
    lattice.kind = ghl::RuleKind::Lattice;
    lattice.points = 256;
    lattice.shifts = 8;
    lattice.seed = 99;
    auto lsums = ghl::replicate_accumulate(lattice, 2, 1,
                                           [](const double* x, double* acc) { acc[0] += x[0]; });
    const auto le = lsums.component(0);
    CHECK(le.samples == 256 * 8);
    CHECK(std::fabs(le.value - 0.5) < std::fmax(5.0 * le.std_error, 2e-3));

    CHECK_THROWS_AS(
        ghl::replicate_accumulate(halton, 0, 1, [](const double*, double*) {}),
        ghl::config_error);
    CHECK_THROWS_AS(
        ghl::replicate_accumulate(halton, 65, 1, [](const double*, double*) {}),
        ghl::config_error);
}

TEST_CASE("randomized estimates are deterministic and respect the error budget") {
    ghl::QmcRule rule;
    rule.kind = ghl::RuleKind::Lattice;
    rule.points = 512;
    rule.shifts = 6;
    rule.seed = 4242;
    auto f = [](const double* x) { return x[0] * x[0]; };
    const auto a = ghl::randomized_estimate(rule, 2, f);
    const auto b = ghl::randomized_estimate(rule, 2, f);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    CHECK(std::fabs(a.value - 1.0 / 3.0) < std::fmax(6.0 * a.std_error, 1e-3));
    // Identical arithmetic regardless of the worker count.
    const auto c = ghl::randomized_estimate(rule, 2, f, 1);
    CHECK(a.value == c.value);
    CHECK(a.std_error == c.std_error);

    ghl::QmcRule strict = rule;
    strict.tol = 1e-16;
    CHECK_THROWS_AS(ghl::randomized_estimate(strict, 2, f), ghl::budget_exceeded);
    // A constant integrand has zero spread and meets any budget.
    const auto flat = ghl::randomized_estimate(strict, 2, [](const double*) { return 2.5; });
    CHECK(flat.value == 2.5);
    CHECK(flat.std_error == 0.0);
}
