#include <cmath>
#include <random>

#include "doctest.h"
#include "loggas/kernels.hpp"
#include "loggas/potential.hpp"

using namespace loggas;

TEST_CASE("log_q_theta closed values") {
    CHECK(log_q_theta(3.0, 1.0) == doctest::Approx(2.1972245773362196).epsilon(1e-12));
    // theta = 1/2 cancels the gamma pair, Q = x
    CHECK(log_q_theta(7.0, 0.5) == doctest::Approx(1.9459101490553132).epsilon(1e-12));
    // theta = 2: Q = x^2 (x^2 - 1)
    CHECK(log_q_theta(3.0, 2.0) == doctest::Approx(4.276666119016055).epsilon(1e-12));
}

TEST_CASE("log_q_theta domain errors") {
    CHECK_THROWS_AS(log_q_theta(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(log_q_theta(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(log_q_theta(0.5, 2.0), std::domain_error);  // x+1-theta <= 0
}

TEST_CASE("log_q_theta at theta=1 is 2 log x") {
    for (double x = 1.0; x <= 1e4; x *= 3.7)
        CHECK(std::fabs(log_q_theta(x, 1.0) - 2.0 * std::log(x)) <= 1e-10);
}

TEST_CASE("sandwich bounds") {
    auto [lo, hi] = q_theta_sandwich(1.0, 1.0);
    CHECK(lo == doctest::Approx(-8.0));
    CHECK(hi == doctest::Approx(8.0));
    auto [lo2, hi2] = q_theta_sandwich(100.0, 1.0);
    CHECK(lo2 == doctest::Approx(2.0 * std::log(100.0) - 0.08).epsilon(1e-12));
    CHECK(hi2 == doctest::Approx(2.0 * std::log(100.0) + 0.08).epsilon(1e-12));
    CHECK_THROWS_AS(q_theta_sandwich(0.5, 1.0), std::domain_error);
}

TEST_CASE("sandwich property over random (x, theta)") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uth(0.01, 4.0);
    std::uniform_real_distribution<double> ue(0.0, 6.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        double theta = uth(rng);
        double x = theta + std::pow(10.0, ue(rng)) * u01(rng);
        x = std::min(x, 1e6);
        auto [lo, hi] = q_theta_sandwich(x, theta);
        double v = log_q_theta(x, theta);
        CHECK(lo <= v + 1e-12);
        CHECK(v <= hi + 1e-12);
    }
}

TEST_CASE("kernel_kv") {
    Potential zero = zero_potential();
    Potential cauchy = cauchy_potential(1.0);
    CHECK(kernel_kv(0.0, 1.0, zero) == doctest::Approx(0.0));
    CHECK(kernel_kv(0.0, 2.0, cauchy) ==
          doctest::Approx(0.11157177565710485).epsilon(1e-12));
    CHECK(kernel_kv(0.5, 0.5, cauchy) == kPlusInf);
    // symmetry
    CHECK(kernel_kv(-1.3, 2.7, cauchy) == kernel_kv(2.7, -1.3, cauchy));
}

TEST_CASE("stereo map") {
    SpherePoint p0 = stereo(0.0);
    CHECK(p0.x1 == doctest::Approx(0.0));
    CHECK(p0.x2 == doctest::Approx(0.0));
    SpherePoint p1 = stereo(1.0);
    CHECK(p1.x1 == doctest::Approx(0.5));
    CHECK(p1.x2 == doctest::Approx(0.5));
    SpherePoint pm = stereo(-1.0);
    CHECK(pm.x1 == doctest::Approx(-0.5));
    CHECK(pm.x2 == doctest::Approx(0.5));
    CHECK_FALSE(stereo(1e12).is_north_pole());
}

TEST_CASE("stereo images lie on the circle; round trip") {
    for (double x : {0.0, 0.3, -2.0, 17.5, -123.0, 1e6, -1e6}) {
        SpherePoint p = stereo(x);
        CHECK(on_circle(p, 1e-12));
        if (std::fabs(x) < 1e4)  // conditioning guard near the pole
            CHECK(std::fabs(stereo_inv(p) - x) <= 1e-10 * std::max(1.0, std::fabs(x)));
    }
    CHECK_THROWS_AS(stereo_inv(north_pole()), std::domain_error);
}

TEST_CASE("stereo_dist identity and bound") {
    CHECK(stereo_dist(0.0, 0.0) == doctest::Approx(0.0));
    CHECK(stereo_dist(0.0, 1.0) ==
          doctest::Approx(0.7071067811865475).epsilon(1e-12));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        double x = u(rng), y = u(rng);
        SpherePoint p = stereo(x), q = stereo(y);
        double d = stereo_dist(x, y);
        worst = std::max(worst, std::fabs(d - std::hypot(p.x1 - q.x1, p.x2 - q.x2)));
        CHECK(d <= 1.0 + 1e-15);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("compactified potential") {
    Potential cauchy = cauchy_potential(1.0);
    Potential zero = zero_potential();
    CHECK(compactified_potential(stereo(0.0), cauchy, 0.0) == doctest::Approx(0.0));
    CHECK(compactified_potential(north_pole(), cauchy, 0.0) == doctest::Approx(0.0));
    CHECK(compactified_potential(stereo(1.0), zero, kMinusInf) ==
          doctest::Approx(-std::log(2.0)).epsilon(1e-12));
    SpherePoint off{0.3, 0.95};
    CHECK_THROWS_AS(compactified_potential(off, cauchy, 0.0), std::domain_error);
}

TEST_CASE("kernel_fv") {
    Potential cauchy = cauchy_potential(1.0);  // compactified form vanishes
    SpherePoint a = stereo(0.5);
    CHECK(kernel_fv(a, a, cauchy, 0.0) == kPlusInf);
    CHECK(kernel_fv(stereo(0.0), north_pole(), cauchy, 0.0) == doctest::Approx(0.0));
    SpherePoint p = stereo(-2.0), q = stereo(3.0);
    CHECK(kernel_fv(p, q, cauchy, 0.0) == kernel_fv(q, p, cauchy, 0.0));
    // log ||p-q||^{-1} >= 0 on the circle of diameter 1
    CHECK(kernel_fv(p, q, cauchy, 0.0) >= 0.0);
}
