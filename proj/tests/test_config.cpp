#include <cmath>
#include <random>

#include "doctest.h"
#include "loggas/config.hpp"
#include "loggas/measure.hpp"

using namespace loggas;

TEST_CASE("validate") {
    ParticleConfig a{3, 0.5, {2, 2, 0}, 0, std::nullopt};
    CHECK(validate(a));
    ParticleConfig b{2, 1.0, {0, 1}, std::nullopt, std::nullopt};
    CHECK_FALSE(validate(b));  // increasing
    ParticleConfig c{2, 1.0, {5, 1}, 2, std::nullopt};
    CHECK_FALSE(validate(c));  // lambda_2 < lower
}

TEST_CASE("positions") {
    ParticleConfig a{2, 1.0, {0, 0}, std::nullopt, std::nullopt};
    auto l = positions(a);
    CHECK(l[0] == doctest::Approx(1.0));
    CHECK(l[1] == doctest::Approx(0.0));
    ParticleConfig b{3, 0.5, {2, 1, 1}, std::nullopt, std::nullopt};
    auto lb = positions(b);
    CHECK(lb[0] == doctest::Approx(3.0));
    CHECK(lb[1] == doctest::Approx(1.5));
    CHECK(lb[2] == doctest::Approx(1.0));
    ParticleConfig c{1, 1.0, {7}, std::nullopt, std::nullopt};
    CHECK(positions(c)[0] == doctest::Approx(7.0));
    ParticleConfig bad{2, 1.0, {0, 1}, std::nullopt, std::nullopt};
    CHECK_THROWS(positions(bad));
}

TEST_CASE("empirical measure") {
    ParticleConfig a{2, 1.0, {0, 0}, std::nullopt, std::nullopt};
    AtomicMeasure mu = empirical_measure(a);
    REQUIRE(mu.atoms.size() == 2);
    CHECK(mu.atoms[0].first == doctest::Approx(0.5));
    CHECK(mu.atoms[0].second == doctest::Approx(0.5));
    CHECK(mu.atoms[1].first == doctest::Approx(0.0));
    CHECK(mu.total_mass() == doctest::Approx(1.0));
}

TEST_CASE("quantile config, uniform on [0,1], theta=1, N=2") {
    GridMeasure uni(0.0, 0.01, std::vector<double>(100, 0.01), 1.0);
    ParticleConfig cfg = quantile_config(uni, 2, 1.0);
    CHECK(cfg.lambda[0] == 0);
    CHECK(cfg.lambda[1] == 0);
}

TEST_CASE("quantile config, uniform on [0,theta] gives lambda = 0") {
    for (double theta : {0.5, 1.0}) {
        GridMeasure uni(0.0, theta / 64.0,
                        std::vector<double>(64, 1.0 / 64.0), 1.0 / theta);
        for (int n : {1, 2, 5, 16}) {
            ParticleConfig cfg = quantile_config(uni, n, theta);
            for (long long lam : cfg.lambda) CHECK(lam == 0);
        }
    }
}

namespace {

GridMeasure random_density(std::mt19937_64& rng, double theta) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    size_t cells = 120;
    double lo = -2.0 + 2.0 * u(rng);
    double hi = lo + 2.0 + 3.0 * u(rng);
    double h = (hi - lo) / static_cast<double>(cells);
    double c1 = lo + (hi - lo) * u(rng);
    double s1 = 0.2 + u(rng);
    std::vector<double> w(cells);
    for (size_t i = 0; i < cells; ++i) {
        double x = lo + (static_cast<double>(i) + 0.5) * h;
        w[i] = std::exp(-(x - c1) * (x - c1) / (s1 * s1)) + 0.02;
    }
    double tot = 0.0;
    for (double v : w) tot += v;
    double cap = 1.0 / theta;
    for (auto& v : w) v /= tot;
    // water-filling: w_i = min(s * p_i, h * cap) with s chosen so the sum is 1
    auto mass_at = [&](double s) {
        double m = 0.0;
        for (double v : w) m += std::min(s * v, h * cap);
        return m;
    };
    double s_lo = 1.0, s_hi = 1.0;
    while (mass_at(s_hi) < 1.0) s_hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (s_lo + s_hi);
        (mass_at(mid) < 1.0 ? s_lo : s_hi) = mid;
    }
    double s = 0.5 * (s_lo + s_hi);
    for (auto& v : w) v = std::min(s * v, h * cap);
    double m = 0.0;
    for (double v : w) m += v;
    for (auto& v : w) v *= 1.0 / m;
    return GridMeasure(lo, h, std::move(w), cap);
}

}  // namespace

TEST_CASE("quantile config validity on random capped densities") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        GridMeasure mu = random_density(rng, 1.0);
        for (int n : {2, 3, 8, 64}) {
            ParticleConfig cfg = quantile_config(mu, n, 1.0);
            CHECK(validate(cfg));
        }
    }
}

TEST_CASE("quantile configs converge in Levy distance") {
    std::mt19937_64 rng(13);
    GridMeasure mu = random_density(rng, 1.0);
    double d128 = levy_distance(empirical_measure(quantile_config(mu, 128, 1.0)), mu);
    double d512 = levy_distance(empirical_measure(quantile_config(mu, 512, 1.0)), mu);
    CHECK(d512 <= 0.05);
    CHECK(d512 <= d128 + 1e-9);
}

TEST_CASE("log_weight") {
    Potential zero = zero_potential();
    ParticleConfig n1{1, 1.5, {3}, std::nullopt, std::nullopt};
    Potential cauchy = cauchy_potential(1.5);
    // N=1: -theta * N * V(l_1 / N) with N = 1
    CHECK(log_weight(n1, cauchy) ==
          doctest::Approx(-1.5 * std::log(1.0 + 9.0)).epsilon(1e-12));
    ParticleConfig n2{2, 1.0, {0, 0}, std::nullopt, std::nullopt};
    CHECK(log_weight(n2, zero) == doctest::Approx(0.0));
    ParticleConfig n3{3, 1.0, {0, 0, 0}, std::nullopt, std::nullopt};
    CHECK(log_weight(n3, zero) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("log_weight translation covariance") {
    Potential cauchy = cauchy_potential(1.0);
    ParticleConfig cfg{3, 1.0, {4, 2, 1}, std::nullopt, std::nullopt};
    const long long k = 5;
    ParticleConfig shifted = cfg;
    for (auto& lam : shifted.lambda) lam += k;
    Potential moved(
        [&](double x) { return std::log1p((x - k / 3.0) * (x - k / 3.0)); },
        GrowthCertificate{1.0, 0.0}, 0.0);
    CHECK(log_weight(cfg, cauchy) ==
          doctest::Approx(log_weight(shifted, moved)).epsilon(1e-12));
}

TEST_CASE("discrete energy") {
    Potential zero = zero_potential();
    ParticleConfig n2{2, 1.0, {0, 0}, std::nullopt, std::nullopt};
    CHECK(discrete_energy(n2, zero) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
    ParticleConfig n1{1, 1.0, {7}, std::nullopt, std::nullopt};
    CHECK(discrete_energy(n1, zero) == doctest::Approx(0.0));
    // V == 0 relation against the direct pair sum
    ParticleConfig c{4, 0.5, {5, 3, 2, 0}, std::nullopt, std::nullopt};
    auto l = positions(c);
    double direct = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            direct -= 2.0 * std::log((l[i] - l[j]) / 4.0);
    CHECK(discrete_energy(c, zero) == doctest::Approx(direct / 16.0).epsilon(1e-12));
}

TEST_CASE("line serialization round trip") {
    ParticleConfig cfg{3, 0.7071067811865476, {9, 2, -3}, -5, std::nullopt};
    std::string line = to_line(cfg);
    ParticleConfig back = config_from_line(line);
    CHECK(back.n == cfg.n);
    CHECK(back.theta == cfg.theta);  // bit-exact via %.17g
    CHECK(back.lambda == cfg.lambda);
    CHECK(back.lower == cfg.lower);
    CHECK(back.upper == cfg.upper);
    CHECK(to_line(back) == line);
    CHECK_THROWS(config_from_line("2 1.0 0 inf : 1"));  // wrong count
}
