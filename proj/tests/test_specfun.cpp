#include <doctest.h>

#include <cmath>
#include <random>

#include "clustor/errors.hpp"
#include "clustor/kummer.hpp"
#include "clustor/phase_track.hpp"
#include "oracles.hpp"

using namespace clustor;

TEST_CASE("catan of a*tan(x) with a = 1 is the identity") {
    PhaseTrack track;
    auto num = [](double x) { return std::sin(x); };
    auto den = [](double x) { return std::cos(x); };
    const double v = catan_eval(num, den, 0.0, 2.3, track);
    CHECK(v == doctest::Approx(2.3).epsilon(1e-12));
}

TEST_CASE("catan over an empty interval does not move") {
    PhaseTrack track;
    auto num = [](double x) { return 0.02 * std::sin(x); };
    auto den = [](double x) { return std::cos(x); };
    catan_eval(num, den, 0.0, 1.0, track);
    const double before = track.last_angle;
    const double v = catan_eval(num, den, 1.0, 1.0, track);
    CHECK(v == before);
}

TEST_CASE("catan accumulates pi per period for a = .02") {
    // oracle: quadrature of the derivative form 2a/((1+a^2)+(1-a^2)cos 2u)
    const double a = 0.02;
    const double expected = oracles::integrate(
        [a](double u) {
            return 2.0 * a / ((1.0 + a * a) + (1.0 - a * a) * std::cos(2.0 * u));
        },
        0.0, M_PI);
    CHECK(expected == doctest::Approx(M_PI).epsilon(1e-10));  // frozen: equals pi

    PhaseTrack track;
    auto num = [a](double x) { return a * std::sin(x); };
    auto den = [](double x) { return std::cos(x); };
    const double v = catan_eval(num, den, 0.0, M_PI, track);
    CHECK(v == doctest::Approx(M_PI).epsilon(1e-10));
}

TEST_CASE("catan continuity across many periods at strong squashing") {
    PhaseTrack track;
    const double a = 1e-4;
    auto num = [a](double x) { return a * std::sin(x); };
    auto den = [](double x) { return std::cos(x); };
    const double v = catan_eval(num, den, 0.0, 10.0 * M_PI, track);
    CHECK(v == doctest::Approx(10.0 * M_PI).epsilon(1e-9));
    CHECK(track.winding == 10);
}

TEST_CASE("catan reports a genuine common zero") {
    PhaseTrack track;
    auto num = [](double x) { return x - 1.0; };
    auto den = [](double x) { return x - 1.0; };
    CHECK_THROWS_AS(catan_eval(num, den, 0.0, 2.0, track), NonConvergentUnwrap);
}

TEST_CASE("Kummer M basics") {
    CHECK(kummer_m({0.7, 0.5, 0.0}) == doctest::Approx(1.0));       // M(a,b,0) = 1
    CHECK(kummer_m({0.0, 0.5, 3.7}) == doctest::Approx(1.0));       // a = 0 truncates
    CHECK(kummer_m({0.5, 0.5, 1.0}) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    // direct summation cross-check at z = 1
    double sum = 0.0, term = 1.0;
    for (int n = 0; n < 40; ++n) {
        sum += term;
        term *= (0.5 + n) * 1.0 / ((0.5 + n) * (n + 1.0));
    }
    CHECK(kummer_m({0.5, 0.5, 1.0}) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("Kummer M_z via the shift identity") {
    CHECK(kummer_mz({0.7, 0.5, 0.0}) == doctest::Approx(0.7 / 0.5));  // a/b at z = 0
    CHECK(kummer_mz({0.0, 1.5, 2.0}) == doctest::Approx(0.0));
    CHECK(kummer_mz({0.5, 0.5, 1.0}) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("Kummer M_a values and finite-difference oracle") {
    CHECK(kummer_ma({0.7, 0.5, 0.0}) == doctest::Approx(0.0));
    CHECK(kummer_ma({-2.0, 1.5, 0.0}) == doctest::Approx(0.0));
    const double fd = oracles::derivative(
        [](double a) { return kummer_m({a, 0.5, 1.0}); }, 0.25, 1e-6);
    CHECK(kummer_ma({0.25, 0.5, 1.0}) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("Kummer M_za values and finite-difference oracle") {
    CHECK(kummer_mza({0.7, 0.5, 0.0}) == doctest::Approx(1.0 / 0.5));
    CHECK(kummer_mza({-1.3, 0.5, 0.0}) == doctest::Approx(2.0));
    const double fd = oracles::derivative(
        [](double a) { return kummer_mz({a, 0.5, 1.0}); }, 0.25, 1e-6);
    CHECK(kummer_mza({0.25, 0.5, 1.0}) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("M_z agrees with central differences of M in z") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> da(-3.0, 3.0), dz(0.1, 20.0);
    for (int i = 0; i < 60; ++i) {
        const double a = da(rng), z = dz(rng);
        for (double b : {0.5, 1.5}) {
            const double mz = kummer_mz({a, b, z});
            const double fd = oracles::derivative(
                [&](double zz) { return kummer_m({a, b, zz}); }, z, 1e-5 * (1.0 + z));
            CHECK(std::abs(mz - fd) <= std::fmax(1e-8, 1e-6 * std::abs(mz)));
        }
    }
}

TEST_CASE("M_a stays finite at non-positive integer a") {
    // truncating series: the joint term recurrence must not produce inf/nan
    for (double a : {0.0, -1.0, -2.0, -5.0}) {
        const double v = kummer_ma({a, 0.5, 4.0});
        CHECK(std::isfinite(v));
        // FD oracle straddling the integer
        const double fd = (kummer_m({a + 1e-6, 0.5, 4.0}) - kummer_m({a - 1e-6, 0.5, 4.0})) / 2e-6;
        CHECK(v == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("digamma-difference identity against independent digamma") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> da(0.05, 8.0);
    std::uniform_int_distribution<int> dn(0, 30);
    for (int i = 0; i < 100; ++i) {
        const double a = da(rng);
        const int n = dn(rng);
        const double lhs = digamma_diff(a, n);
        const double rhs = oracles::digamma(a + n) - oracles::digamma(a);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("truncating M reproduces Hermite polynomials") {
    // H_{2n}(x)  = (-1)^n (2n)!/n!   M(-n, 1/2, x^2)
    // H_{2n+1}(x) = (-1)^n 2 (2n+1)!/n! x M(-n, 3/2, x^2)
    for (int n : {0, 1, 2, 3, 5}) {
        double fact_ratio_even = 1.0;  // (2n)!/n!
        for (int k = n + 1; k <= 2 * n; ++k) fact_ratio_even *= k;
        double fact_ratio_odd = fact_ratio_even * (2 * n + 1);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < 20; ++i) {
            const double x = -3.0 + 6.0 * i / 19.0;
            const double even = sign * fact_ratio_even * kummer_m({-double(n), 0.5, x * x});
            CHECK(even == doctest::Approx(oracles::hermite(2 * n, x)).epsilon(1e-10));
            const double odd =
                sign * 2.0 * fact_ratio_odd * x * kummer_m({-double(n), 1.5, x * x});
            CHECK(odd == doctest::Approx(oracles::hermite(2 * n + 1, x)).epsilon(1e-10));
        }
    }
}

TEST_CASE("series overflow guard") {
    CHECK_THROWS_AS(kummer_m({0.5, 0.5, 900.0}), SeriesOverflow);
}

TEST_CASE("invalid Kummer parameters are rejected") {
    CHECK_THROWS_AS(kummer_m({0.5, -1.0, 1.0}), InvalidConfig);
    CHECK_THROWS_AS(kummer_m({0.5, 0.5, -1.0}), InvalidConfig);
    CHECK_THROWS_AS(digamma_diff(-2.0, 5), InvalidConfig);
}
