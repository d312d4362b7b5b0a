#include "loggas/loggas.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "loggas/ensemble.hpp"
#include "loggas/equilibrium.hpp"
#include "loggas/kernels.hpp"
#include "loggas/ldp.hpp"
#include "loggas/measure.hpp"
#include "loggas/verify.hpp"

namespace {

thread_local std::string g_last_error;

lg_status fail(lg_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

lg_status wrap(const std::function<lg_status()>& body) {
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        return fail(LG_ERR_INVALID, e.what());
    } catch (const std::domain_error& e) {
        return fail(LG_ERR_DOMAIN, e.what());
    } catch (const std::runtime_error& e) {
        return fail(LG_ERR_CONVERGENCE, e.what());
    } catch (const std::exception& e) {
        return fail(LG_ERR_INVALID, e.what());
    }
}

void copy_str(const std::string& s, char* buf, size_t len) {
    if (!buf || len == 0) return;
    size_t n = std::min(s.size(), len - 1);
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
}

}  // namespace

struct lg_model {
    enum Kind { kJack, kCauchy, kTable } kind;
    double theta;
    loggas::JackParams jack{};
    // table data
    std::vector<double> xs, vs;
    loggas::GrowthCertificate cert{};
    double tail = 0.0;
    mutable std::unique_ptr<loggas::JackCdf> jack_cdf;

    loggas::Potential limit_potential() const {
        switch (kind) {
            case kJack: return loggas::jack_limit_potential(jack);
            case kCauchy: return loggas::cauchy_potential(theta);
            case kTable: return loggas::table_potential(xs, vs, cert, tail);
        }
        return loggas::zero_potential();
    }
    loggas::Potential potential_at(int n) const {
        if (kind == kJack) return loggas::jack_potential(jack, n);
        return limit_potential();
    }
    const loggas::JackCdf& cdf() const {
        if (!jack_cdf)
            jack_cdf = std::make_unique<loggas::JackCdf>(jack);
        return *jack_cdf;
    }
};

struct lg_measure {
    loggas::GridMeasure m;
};

struct lg_sampler {
    loggas::McmcSampler s;
};

extern "C" {

const char* lg_last_error(void) { return g_last_error.c_str(); }

lg_status lg_log_q_theta(double x, double theta, double* out) {
    return wrap([&] {
        if (!out) return fail(LG_ERR_INVALID, "null output");
        *out = loggas::log_q_theta(x, theta);
        return LG_OK;
    });
}

lg_status lg_q_theta_sandwich(double x, double theta, double* lo, double* hi) {
    return wrap([&] {
        if (!lo || !hi) return fail(LG_ERR_INVALID, "null output");
        auto [a, b] = loggas::q_theta_sandwich(x, theta);
        *lo = a;
        *hi = b;
        return LG_OK;
    });
}

lg_status lg_stereo_dist(double x, double y, double* out) {
    return wrap([&] {
        if (!out) return fail(LG_ERR_INVALID, "null output");
        *out = loggas::stereo_dist(x, y);
        return LG_OK;
    });
}

lg_model* lg_model_jack(double theta, double t) {
    if (!(theta > 0.0) || !(t > 0.0)) {
        g_last_error = "jack model needs theta > 0 and t > 0";
        return nullptr;
    }
    auto* m = new lg_model;
    m->kind = lg_model::kJack;
    m->theta = theta;
    m->jack = {theta, t};
    return m;
}

lg_model* lg_model_cauchy(double theta) {
    if (!(theta > 0.5)) {
        g_last_error =
            "cauchy ensemble is not a well-defined probability measure for "
            "theta <= 1/2";
        return nullptr;
    }
    auto* m = new lg_model;
    m->kind = lg_model::kCauchy;
    m->theta = theta;
    return m;
}

lg_model* lg_model_table(const double* xs, const double* vs, size_t count,
                         double theta, double theta_prime, double floor_const,
                         double tail_value) {
    if (!xs || !vs || count < 2 || !(theta > 0.0)) {
        g_last_error = "table model needs >= 2 samples and theta > 0";
        return nullptr;
    }
    auto* m = new lg_model;
    m->kind = lg_model::kTable;
    m->theta = theta;
    m->xs.assign(xs, xs + count);
    m->vs.assign(vs, vs + count);
    m->cert = {theta_prime, floor_const};
    m->tail = tail_value;
    return m;
}

void lg_model_free(lg_model* m) { delete m; }

double lg_model_theta(const lg_model* m) { return m ? m->theta : 0.0; }

lg_status lg_model_closed_density(const lg_model* m, double x, double* out) {
    return wrap([&] {
        if (!m || !out) return fail(LG_ERR_INVALID, "null argument");
        if (m->kind == lg_model::kJack)
            *out = loggas::jack_density(m->jack, x);
        else if (m->kind == lg_model::kCauchy)
            *out = loggas::cauchy_density(x);
        else
            return fail(LG_ERR_UNSUPPORTED, "no closed-form density for tables");
        return LG_OK;
    });
}

lg_status lg_model_closed_cdf(const lg_model* m, double x, double* out) {
    return wrap([&] {
        if (!m || !out) return fail(LG_ERR_INVALID, "null argument");
        if (m->kind == lg_model::kJack)
            *out = m->cdf()(x);
        else if (m->kind == lg_model::kCauchy)
            *out = 0.5 + std::atan(x) / M_PI;
        else
            return fail(LG_ERR_UNSUPPORTED, "no closed-form CDF for tables");
        return LG_OK;
    });
}

lg_status lg_model_support(const lg_model* m, double* lo, double* hi) {
    return wrap([&] {
        if (!m || !lo || !hi) return fail(LG_ERR_INVALID, "null argument");
        if (m->kind != lg_model::kJack)
            return fail(LG_ERR_UNSUPPORTED, "closed-form support: Jack only");
        auto [a, b] = loggas::jack_support(m->jack);
        *lo = a;
        *hi = b;
        return LG_OK;
    });
}

lg_status lg_model_domain(const lg_model* m, double* lo, double* hi) {
    return wrap([&] {
        if (!m || !lo || !hi) return fail(LG_ERR_INVALID, "null argument");
        if (m->kind == lg_model::kJack) {
            *lo = 0.0;
            *hi = loggas::kPlusInf;
        } else {
            *lo = loggas::kMinusInf;
            *hi = loggas::kPlusInf;
        }
        return LG_OK;
    });
}

lg_status lg_model_reference_free_energy(const lg_model* m, double* out) {
    return wrap([&] {
        if (!m || !out) return fail(LG_ERR_INVALID, "null argument");
        if (m->kind != lg_model::kJack)
            return fail(LG_ERR_UNSUPPORTED,
                        "closed-form reference energy: Jack only");
        auto [slo, shi] = loggas::jack_support(m->jack);
        loggas::GridMeasure ref = loggas::grid_from_density(
            [&](double x) { return loggas::jack_density(m->jack, x); }, 0.0,
            shi + 1.0, 2000, 1.0 / m->theta);
        *out = -m->theta * loggas::energy(ref, loggas::jack_limit_potential(m->jack));
        return LG_OK;
    });
}

lg_status lg_wellposedness(const lg_model* m, int n, int has_lower,
                           long long lower, int has_upper, long long upper,
                           int* ok, double* witnessed_floor,
                           double* violating_x, char* msg, size_t msg_len) {
    return wrap([&] {
        if (!m || !ok) return fail(LG_ERR_INVALID, "null argument");
        loggas::EnsembleSpec spec;
        spec.theta = m->theta;
        spec.n = n;
        if (has_lower) spec.lower = lower;
        if (has_upper) spec.upper = upper;
        spec.potential = m->potential_at(n);
        loggas::WellposednessResult r = loggas::wellposedness_check(spec);
        *ok = r.ok ? 1 : 0;
        if (witnessed_floor) *witnessed_floor = r.witnessed_floor;
        if (violating_x) *violating_x = r.violating_x;
        copy_str(r.message, msg, msg_len);
        return LG_OK;
    });
}

lg_status lg_equilibrium_solve(const lg_model* m, double win_lo, double win_hi,
                               size_t cells, double tol, lg_measure** out,
                               double* c, double* residual_support,
                               double* residual_offsupport, double* f_value,
                               int* iterations) {
    return wrap([&] {
        if (!m || !out) return fail(LG_ERR_INVALID, "null argument");
        loggas::EquilibriumProblem prob;
        prob.theta = m->theta;
        lg_model_domain(m, &prob.domain_lo, &prob.domain_hi);
        prob.window_lo = std::max(win_lo, prob.domain_lo);
        prob.window_hi = std::min(win_hi, prob.domain_hi);
        prob.potential = m->limit_potential();
        prob.cells = cells;
        prob.tol = tol;
        loggas::EquilibriumSolution sol = loggas::solve(prob);
        *out = new lg_measure{std::move(sol.measure)};
        if (c) *c = sol.c;
        if (residual_support) *residual_support = sol.residual_support;
        if (residual_offsupport) *residual_offsupport = sol.residual_offsupport;
        if (f_value) *f_value = sol.f_value;
        if (iterations) *iterations = sol.iterations;
        return LG_OK;
    });
}

void lg_measure_free(lg_measure* mu) { delete mu; }
size_t lg_measure_cells(const lg_measure* mu) { return mu->m.cells(); }
double lg_measure_left(const lg_measure* mu) { return mu->m.left(); }
double lg_measure_h(const lg_measure* mu) { return mu->m.h(); }
double lg_measure_weight(const lg_measure* mu, size_t i) {
    return mu->m.weights()[i];
}
double lg_measure_density(const lg_measure* mu, size_t i) {
    return mu->m.density(i);
}

lg_status lg_measure_write_csv(const lg_measure* mu, const char* path) {
    return wrap([&] {
        if (!mu || !path) return fail(LG_ERR_INVALID, "null argument");
        std::ofstream os(path);
        if (!os) return fail(LG_ERR_IO, std::string("cannot open ") + path);
        mu->m.write_csv(os);
        return os ? LG_OK : fail(LG_ERR_IO, "write failed");
    });
}

lg_status lg_measure_write_cdf_csv(const lg_measure* mu, const char* path) {
    return wrap([&] {
        if (!mu || !path) return fail(LG_ERR_INVALID, "null argument");
        std::ofstream os(path);
        if (!os) return fail(LG_ERR_IO, std::string("cannot open ") + path);
        mu->m.write_cdf_csv(os);
        return os ? LG_OK : fail(LG_ERR_IO, "write failed");
    });
}

namespace {

loggas::EnsembleSpec make_spec(const lg_model* m, int n, int has_lower,
                               long long lower, int has_upper,
                               long long upper) {
    loggas::EnsembleSpec spec;
    spec.theta = m->theta;
    spec.n = n;
    if (has_lower) spec.lower = lower;
    if (has_upper) spec.upper = upper;
    if (m->kind == lg_model::kJack && !has_lower) spec.lower = 0;
    spec.potential = m->potential_at(n);
    return spec;
}

}  // namespace

lg_status lg_partition_closed(const lg_model* m, int n, double* log_z) {
    return wrap([&] {
        if (!m || !log_z) return fail(LG_ERR_INVALID, "null argument");
        if (m->kind != lg_model::kJack)
            return fail(LG_ERR_UNSUPPORTED, "closed-form partition: Jack only");
        *log_z = loggas::jack_partition_closed(m->jack, n);
        return LG_OK;
    });
}

lg_status lg_partition_exact(const lg_model* m, int n, int has_lower,
                             long long lower, int has_upper, long long upper,
                             double rel_tol, double* log_z,
                             double* tail_bound) {
    return wrap([&] {
        if (!m || !log_z) return fail(LG_ERR_INVALID, "null argument");
        loggas::EnsembleSpec spec =
            make_spec(m, n, has_lower, lower, has_upper, upper);
        loggas::PartitionResult r = loggas::partition_auto(spec, rel_tol);
        *log_z = r.log_z;
        if (tail_bound) *tail_bound = r.tail_bound;
        return LG_OK;
    });
}

lg_status lg_scaled_free_energy(const lg_model* m, int n, int method,
                                double* out, double* tail_bound) {
    return wrap([&] {
        if (!m || !out) return fail(LG_ERR_INVALID, "null argument");
        double dn = n;
        if (method == 1) {
            if (m->kind != lg_model::kJack)
                return fail(LG_ERR_UNSUPPORTED, "closed form: Jack only");
            *out = loggas::scaled_log_partition(make_spec(m, n, 0, 0, 0, 0),
                                                loggas::PartitionMethod::kClosed,
                                                &m->jack) /
                   (dn * dn);
            if (tail_bound) *tail_bound = 0.0;
            return LG_OK;
        }
        loggas::EnsembleSpec spec = make_spec(m, n, 0, 0, 0, 0);
        loggas::PartitionResult r = loggas::partition_auto(spec, 1e-10);
        *out = (r.log_z - dn * (dn - 1.0) * spec.theta * std::log(dn)) / (dn * dn);
        if (tail_bound) *tail_bound = r.tail_bound;
        return LG_OK;
    });
}

lg_status lg_sampler_new(const lg_model* m, int n, int has_lower,
                         long long lower, int has_upper, long long upper,
                         uint64_t seed, int init_mode, lg_sampler** out) {
    return wrap([&] {
        if (!m || !out) return fail(LG_ERR_INVALID, "null argument");
        loggas::EnsembleSpec spec =
            make_spec(m, n, has_lower, lower, has_upper, upper);
        loggas::WellposednessResult wp = loggas::wellposedness_check(spec);
        if (!wp.ok) return fail(LG_ERR_DOMAIN, wp.message);
        if (init_mode == 1) {
            if (m->kind != lg_model::kJack)
                return fail(LG_ERR_UNSUPPORTED, "quantile start: Jack only");
            auto [slo, shi] = loggas::jack_support(m->jack);
            loggas::GridMeasure ref = loggas::grid_from_density(
                [&](double x) { return loggas::jack_density(m->jack, x); }, 0.0,
                shi + 1.0, 4000, 1.0 / m->theta);
            loggas::ParticleConfig init =
                loggas::quantile_config(ref, n, m->theta);
            init.lower = spec.lower;
            init.upper = spec.upper;
            *out = new lg_sampler{
                loggas::McmcSampler(spec, seed, std::move(init))};
        } else {
            *out = new lg_sampler{loggas::McmcSampler(spec, seed)};
        }
        return LG_OK;
    });
}

void lg_sampler_free(lg_sampler* s) { delete s; }

lg_status lg_sampler_run(lg_sampler* s, long long steps) {
    return wrap([&] {
        if (!s || steps < 0) return fail(LG_ERR_INVALID, "bad argument");
        s->s.run(steps);
        return LG_OK;
    });
}

lg_status lg_sampler_state(const lg_sampler* s, long long* lambda) {
    return wrap([&] {
        if (!s || !lambda) return fail(LG_ERR_INVALID, "null argument");
        const auto& lam = s->s.state().lambda;
        std::memcpy(lambda, lam.data(), lam.size() * sizeof(long long));
        return LG_OK;
    });
}

lg_status lg_sampler_line(const lg_sampler* s, char* buf, size_t len) {
    return wrap([&] {
        if (!s || !buf) return fail(LG_ERR_INVALID, "null argument");
        copy_str(loggas::to_line(s->s.state()), buf, len);
        return LG_OK;
    });
}

long long lg_sampler_accepted(const lg_sampler* s) { return s->s.accepted(); }
long long lg_sampler_proposals(const lg_sampler* s) { return s->s.proposals(); }

lg_status lg_ks_against_model(const lg_model* m, int n,
                              const long long* lambdas, size_t n_samples,
                              double* ks) {
    return wrap([&] {
        if (!m || !lambdas || !ks || n_samples == 0 || n < 1)
            return fail(LG_ERR_INVALID, "bad argument");
        std::vector<loggas::ParticleConfig> samples;
        samples.reserve(n_samples);
        for (size_t k = 0; k < n_samples; ++k) {
            loggas::ParticleConfig cfg;
            cfg.n = n;
            cfg.theta = m->theta;
            cfg.lambda.assign(lambdas + k * static_cast<size_t>(n),
                              lambdas + (k + 1) * static_cast<size_t>(n));
            samples.push_back(std::move(cfg));
        }
        std::function<double(double)> ref;
        if (m->kind == lg_model::kJack)
            ref = [m](double x) { return m->cdf()(x); };
        else if (m->kind == lg_model::kCauchy)
            ref = [](double x) { return 0.5 + std::atan(x) / M_PI; };
        else
            return fail(LG_ERR_UNSUPPORTED, "no closed-form CDF for tables");
        *ks = loggas::ks_compare(samples, ref);
        return LG_OK;
    });
}

lg_status lg_verify(const char* suite, char* report, size_t report_len,
                    int* all_pass) {
    return wrap([&] {
        if (!suite || !all_pass) return fail(LG_ERR_INVALID, "null argument");
        auto results = loggas::run_suite(suite);
        std::ostringstream os;
        int ok = 1;
        for (const auto& r : results) {
            if (!r.pass) ok = 0;
            os << (r.pass ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail
               << '\n';
        }
        *all_pass = ok;
        copy_str(os.str(), report, report_len);
        return LG_OK;
    });
}

}  // extern "C"
