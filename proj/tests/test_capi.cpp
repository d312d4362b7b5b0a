#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "loggas/loggas.h"

TEST_CASE("scalar kernels through the C surface") {
    double v = 0.0;
    REQUIRE(lg_log_q_theta(3.0, 1.0, &v) == LG_OK);
    CHECK(v == doctest::Approx(std::log(9.0)).epsilon(1e-12));
    CHECK(lg_log_q_theta(-1.0, 1.0, &v) == LG_ERR_DOMAIN);
    CHECK(std::string(lg_last_error()).size() > 0);
    double lo, hi;
    REQUIRE(lg_q_theta_sandwich(1.0, 1.0, &lo, &hi) == LG_OK);
    CHECK(lo == doctest::Approx(-8.0));
    CHECK(hi == doctest::Approx(8.0));
    REQUIRE(lg_stereo_dist(0.0, 1.0, &v) == LG_OK);
    CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("model construction and refusal") {
    lg_model* jack = lg_model_jack(1.0, 1.0);
    REQUIRE(jack != nullptr);
    CHECK(lg_model_theta(jack) == 1.0);
    double d = 0.0;
    REQUIRE(lg_model_closed_density(jack, 2.0, &d) == LG_OK);
    CHECK(d == doctest::Approx(0.25).epsilon(1e-12));
    double slo, shi;
    REQUIRE(lg_model_support(jack, &slo, &shi) == LG_OK);
    CHECK(slo == doctest::Approx(0.0));
    CHECK(shi == doctest::Approx(4.0));
    lg_model_free(jack);

    lg_model* bad = lg_model_cauchy(0.4);
    CHECK(bad == nullptr);
    CHECK(std::string(lg_last_error()).find("well-defined") != std::string::npos);
    lg_model* ok = lg_model_cauchy(0.6);
    REQUIRE(ok != nullptr);
    int wp = 0;
    double floor_v, viol;
    char msg[256];
    REQUIRE(lg_wellposedness(ok, 2, 0, 0, 0, 0, &wp, &floor_v, &viol, msg,
                             sizeof msg) == LG_OK);
    CHECK(wp == 1);
    lg_model_free(ok);
}

TEST_CASE("partition functions") {
    lg_model* jack = lg_model_jack(1.0, 1.0);
    REQUIRE(jack != nullptr);
    double closed = 0.0, exact = 0.0, tail = 0.0;
    REQUIRE(lg_partition_closed(jack, 2, &closed) == LG_OK);
    CHECK(closed == doctest::Approx(4.0 + std::log(2.0)).epsilon(1e-12));
    REQUIRE(lg_partition_exact(jack, 2, 0, 0, 0, 0, 1e-9, &exact, &tail) == LG_OK);
    CHECK(std::fabs(exact - closed) <= 1e-6 * closed);
    double sf = 0.0;
    REQUIRE(lg_scaled_free_energy(jack, 1, 1, &sf, nullptr) == LG_OK);
    CHECK(sf == doctest::Approx(1.0).epsilon(1e-12));
    lg_model_free(jack);
}

TEST_CASE("equilibrium solve and measure IO") {
    lg_model* m = lg_model_cauchy(1.0);
    REQUIRE(m != nullptr);
    lg_measure* mu = nullptr;
    double c, rs, ro, f;
    int iters;
    REQUIRE(lg_equilibrium_solve(m, -6.0, 6.0, 300, 5e-3, &mu, &c, &rs, &ro, &f,
                                 &iters) == LG_OK);
    REQUIRE(mu != nullptr);
    CHECK(lg_measure_cells(mu) == 300);
    double tot = 0.0;
    for (size_t i = 0; i < 300; ++i) tot += lg_measure_weight(mu, i);
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rs <= 5e-3);
    std::string path = "capi_measure_tmp.csv";
    REQUIRE(lg_measure_write_csv(mu, path.c_str()) == LG_OK);
    std::ifstream is(path);
    std::string head;
    std::getline(is, head);
    CHECK(head.rfind("left,h,cap", 0) == 0);
    is.close();
    std::remove(path.c_str());
    lg_measure_free(mu);
    lg_model_free(m);
}

TEST_CASE("sampler determinism and KS plumbing") {
    lg_model* m = lg_model_jack(1.0, 1.0);
    REQUIRE(m != nullptr);
    lg_sampler *a = nullptr, *b = nullptr;
    REQUIRE(lg_sampler_new(m, 3, 0, 0, 0, 0, 7, 0, &a) == LG_OK);
    REQUIRE(lg_sampler_new(m, 3, 0, 0, 0, 0, 7, 0, &b) == LG_OK);
    REQUIRE(lg_sampler_run(a, 5000) == LG_OK);
    REQUIRE(lg_sampler_run(b, 5000) == LG_OK);
    long long la[3], lb[3];
    REQUIRE(lg_sampler_state(a, la) == LG_OK);
    REQUIRE(lg_sampler_state(b, lb) == LG_OK);
    CHECK(std::memcmp(la, lb, sizeof la) == 0);
    CHECK(lg_sampler_accepted(a) == lg_sampler_accepted(b));
    char line[256];
    REQUIRE(lg_sampler_line(a, line, sizeof line) == LG_OK);
    CHECK(std::string(line).find(" : ") != std::string::npos);

    std::vector<long long> pool;
    for (int k = 0; k < 50; ++k) {
        lg_sampler_run(a, 50);
        lg_sampler_state(a, la);
        pool.insert(pool.end(), la, la + 3);
    }
    double ks = -1.0;
    REQUIRE(lg_ks_against_model(m, 3, pool.data(), 50, &ks) == LG_OK);
    CHECK(ks >= 0.0);
    CHECK(ks <= 1.0);
    lg_sampler_free(a);
    lg_sampler_free(b);
    lg_model_free(m);
}

TEST_CASE("verify suite via the C surface") {
    std::vector<char> report(1 << 15);
    int all = 0;
    REQUIRE(lg_verify("kernels", report.data(), report.size(), &all) == LG_OK);
    CHECK(all == 1);
    CHECK(std::string(report.data()).find("PASS") != std::string::npos);
    CHECK(lg_verify("nope", report.data(), report.size(), &all) ==
          LG_ERR_INVALID);
}
