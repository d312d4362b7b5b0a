#include <cmath>
#include <map>

#include "doctest.h"
#include "loggas/ensemble.hpp"
#include "loggas/equilibrium.hpp"

using namespace loggas;

TEST_CASE("jack potential values") {
    JackParams jp{1.0, 1.0};
    Potential v1 = jack_potential(jp, 1);
    CHECK(v1(0.0) == doctest::Approx(0.0));
    CHECK(v1(2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    Potential v10 = jack_potential(jp, 10);
    // (1/10) [lgamma(11) - 10 log 10]
    CHECK(v10(1.0) == doctest::Approx(-0.7921438356864947).epsilon(1e-12));
    // even reflection
    CHECK(v10(-1.0) == doctest::Approx(v10(1.0)).epsilon(1e-14));
}

TEST_CASE("jack limit potential and uniform convergence") {
    JackParams jp{1.0, 1.0};
    Potential v = jack_limit_potential(jp);
    CHECK(v(0.0) == doctest::Approx(0.0));
    double e2 = std::exp(2.0);
    CHECK(v(e2) == doctest::Approx(e2).epsilon(1e-12));
    double prev = kPlusInf;
    for (int n : {4, 16, 64, 256}) {
        Potential vn = jack_potential(jp, n);
        double worst = 0.0;
        for (double x = 0.0; x <= 10.0; x += 0.05)
            worst = std::max(worst, std::fabs(vn(x) - v(x)));
        CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("cauchy potential") {
    Potential v = cauchy_potential(1.0);
    CHECK(v(0.0) == doctest::Approx(0.0));
    CHECK(v(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(v(-3.7) == v(3.7));
}

TEST_CASE("closed-form partition function") {
    for (double theta : {0.5, 1.0, 2.0})
        for (double t : {0.5, 1.0, 2.0})
            CHECK(jack_partition_closed({theta, t}, 1) ==
                  doctest::Approx(t * theta).epsilon(1e-12));
    CHECK(jack_partition_closed({1.0, 1.0}, 2) ==
          doctest::Approx(4.0 + std::log(2.0)).epsilon(1e-12));
    // N=1 brute-force oracle: Z_1 = e^{t theta}
    JackParams jp{1.0, 1.0};
    EnsembleSpec spec{1.0, 1, 0, std::nullopt, jack_potential(jp, 1)};
    PartitionResult pr = partition_exact(spec, 0, 60);
    CHECK(pr.log_z == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pr.tail_bound >= 0.0);
    CHECK(pr.tail_bound <= 1e-12 * std::exp(pr.log_z));
}

TEST_CASE("degenerate window reduces to one configuration") {
    JackParams jp{1.0, 1.0};
    EnsembleSpec spec{1.0, 1, 3, 3, jack_potential(jp, 1)};
    PartitionResult pr = partition_exact(spec, 3, 3);
    ParticleConfig only{1, 1.0, {3}, 3, 3};
    CHECK(pr.log_z ==
          doctest::Approx(log_weight(only, spec.potential)).epsilon(1e-12));
    CHECK(pr.tail_bound == 0.0);
}

TEST_CASE("exact vs closed partition, N up to 3") {
    for (double theta : {0.5, 1.0}) {
        for (double t : {0.5, 1.0}) {
            JackParams jp{theta, t};
            for (int n = 1; n <= 3; ++n) {
                EnsembleSpec spec{theta, n, 0, std::nullopt,
                                  jack_potential(jp, n)};
                PartitionResult pr = partition_auto(spec, 1e-9);
                double ref = jack_partition_closed(jp, n);
                CHECK(std::fabs(pr.log_z - ref) <= 1e-6 * std::fabs(ref));
            }
        }
    }
}

TEST_CASE("partition monotone in window, tail bounds the increment") {
    JackParams jp{1.0, 1.0};
    EnsembleSpec spec{1.0, 2, 0, std::nullopt, jack_potential(jp, 2)};
    PartitionResult small = partition_exact(spec, 0, 8);
    PartitionResult big = partition_exact(spec, 0, 40);
    CHECK(big.log_z >= small.log_z);
    double increment = std::exp(big.log_z) - std::exp(small.log_z);
    CHECK(increment <= small.tail_bound * (1.0 + 1e-9));
}

TEST_CASE("wellposedness certificates") {
    {
        EnsembleSpec spec{1.0, 2, std::nullopt, std::nullopt,
                          cauchy_potential(1.0)};
        WellposednessResult r = wellposedness_check(spec);
        CHECK(r.ok);
    }
    {
        EnsembleSpec spec{0.4, 2, std::nullopt, std::nullopt,
                          cauchy_potential(0.4)};
        WellposednessResult r = wellposedness_check(spec);
        CHECK_FALSE(r.ok);
        CHECK(r.message.find("theta_prime") != std::string::npos);
    }
    for (double t : {0.5, 2.0}) {
        JackParams jp{1.0, t};
        EnsembleSpec spec{1.0, 3, 0, std::nullopt, jack_potential(jp, 3)};
        CHECK(wellposedness_check(spec).ok);
    }
    {
        // finite lattice needs no certificate
        EnsembleSpec spec{1.0, 2, 0, 10, zero_potential()};
        CHECK(wellposedness_check(spec).ok);
    }
}

TEST_CASE("packed configuration is valid") {
    EnsembleSpec spec{0.5, 4, -3, std::nullopt, zero_potential()};
    ParticleConfig cfg = packed_config(spec);
    CHECK(validate(cfg));
    // packed against the lattice floor: lambda_i = lower
    CHECK(cfg.lambda == std::vector<long long>(4, -3));
}

TEST_CASE("mcmc states stay valid and deltas match full log-weights") {
    JackParams jp{1.0, 1.0};
    EnsembleSpec spec{1.0, 3, 0, std::nullopt, jack_potential(jp, 3)};
    McmcSampler s(spec, 99);
    for (int k = 0; k < 500; ++k) {
        s.step();
        CHECK(validate(s.state()));
    }
    // incremental acceptance arithmetic against the full weight
    ParticleConfig cfg = s.state();
    for (int i = 0; i < 3; ++i) {
        for (int sgn : {-1, 1}) {
            ParticleConfig moved = cfg;
            moved.lambda[static_cast<size_t>(i)] += sgn;
            if (!validate(moved)) continue;
            double d = s.delta_log_weight(i, sgn);
            double full = log_weight(moved, spec.potential) -
                          log_weight(cfg, spec.potential);
            CHECK(d == doctest::Approx(full).epsilon(1e-9));
        }
    }
}

TEST_CASE("mcmc is deterministic given the seed") {
    JackParams jp{1.0, 1.0};
    EnsembleSpec spec{1.0, 2, 0, std::nullopt, jack_potential(jp, 2)};
    McmcSampler a(spec, 2024), b(spec, 2024);
    a.run(2000);
    b.run(2000);
    CHECK(a.state().lambda == b.state().lambda);
    CHECK(a.accepted() == b.accepted());
}

TEST_CASE("N=1 jack marginal is Poisson(t theta)") {
    JackParams jp{1.0, 1.0};
    EnsembleSpec spec{1.0, 1, 0, std::nullopt, jack_potential(jp, 1)};
    McmcSampler s(spec, 31);
    s.run(2000);  // burn-in
    std::map<long long, double> freq;
    const int steps = 100000;
    for (int k = 0; k < steps; ++k) {
        s.step();
        freq[s.state().lambda[0]] += 1.0 / steps;
    }
    double tv = 0.0;
    double lam = jp.t * jp.theta;
    for (long long v = 0; v < 30; ++v) {
        double pois = std::exp(-lam + static_cast<double>(v) * std::log(lam) -
                               std::lgamma(static_cast<double>(v) + 1.0));
        double emp = freq.count(v) ? freq[v] : 0.0;
        tv += 0.5 * std::fabs(pois - emp);
    }
    CHECK(tv <= 0.02);
}
