#include "loggas/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "loggas/ensemble.hpp"
#include "loggas/equilibrium.hpp"
#include "loggas/kernels.hpp"
#include "loggas/ldp.hpp"
#include "loggas/measure.hpp"

namespace loggas {

namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[192];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

GridMeasure random_capped_measure(std::mt19937_64& rng, double theta,
                                  double lo, double hi, size_t cells) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double h = (hi - lo) / static_cast<double>(cells);
    double cap = 1.0 / theta;
    std::vector<double> w(cells);
    // random bump mixture, then clip to the cap and renormalize
    double c1 = lo + (hi - lo) * u(rng), c2 = lo + (hi - lo) * u(rng);
    double s1 = 0.05 + 0.5 * u(rng), s2 = 0.05 + 0.5 * u(rng);
    for (size_t i = 0; i < cells; ++i) {
        double x = lo + (static_cast<double>(i) + 0.5) * h;
        double d1 = (x - c1) / s1, d2 = (x - c2) / s2;
        w[i] = std::exp(-d1 * d1) + 0.7 * std::exp(-d2 * d2) + 1e-4;
    }
    double tot = 0.0;
    for (double v : w) tot += v;
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

void suite_kernels(std::vector<CheckResult>& out) {
    // sandwich bounds on log Q_theta over random (x, theta), x >= theta
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> uth(0.05, 4.0);
    std::uniform_real_distribution<double> ue(0.0, 6.0);
    CheckResult sandwich{"sandwich_bounds_log_q", true, ""};
    for (int k = 0; k < 10000; ++k) {
        double theta = uth(rng);
        double x = theta * (1.0 + std::pow(10.0, ue(rng)) *
                                      std::uniform_real_distribution<double>(
                                          0.0, 1.0)(rng));
        auto [lo, hi] = q_theta_sandwich(x, theta);
        double v = log_q_theta(x, theta);
        if (!(lo <= v + 1e-12 && v <= hi + 1e-12)) {
            sandwich.pass = false;
            sandwich.detail = fmt("violation at x=%.17g theta=%.17g", x, theta);
            break;
        }
    }
    if (sandwich.pass) sandwich.detail = "10000 random (x,theta), 0 violations";
    out.push_back(sandwich);

    CheckResult q1{"q_theta_reduces_to_square_at_theta_1", true, ""};
    for (double x : {0.5, 1.0, 2.0, 7.5, 100.0}) {
        double err = std::fabs(log_q_theta(x, 1.0) - 2.0 * std::log(x));
        if (err > 1e-12) {
            q1.pass = false;
            q1.detail = fmt("x=%.17g err=%.3g", x, err);
            break;
        }
    }
    out.push_back(q1);

    CheckResult dist{"stereographic_distance_identity", true, ""};
    std::uniform_real_distribution<double> ux(-50.0, 50.0);
    for (int k = 0; k < 5000; ++k) {
        double x = ux(rng), y = ux(rng);
        double lhs = stereo_dist(x, y);
        SpherePoint p = stereo(x), q = stereo(y);
        double rhs = std::hypot(p.x1 - q.x1, p.x2 - q.x2);
        if (std::fabs(lhs - rhs) > 1e-12 * (1.0 + lhs)) {
            dist.pass = false;
            dist.detail = fmt("x=%.17g y=%.17g", x, y);
            break;
        }
        if (!on_circle(p) || !on_circle(q)) {
            dist.pass = false;
            dist.detail = fmt("image off the circle at x=%.17g", x);
            break;
        }
    }
    out.push_back(dist);
}

void suite_energy(std::vector<CheckResult>& out) {
    std::mt19937_64 rng(202);
    Potential v = cauchy_potential(1.0);

    CheckResult push{"energy_invariant_under_pushforward", true, ""};
    double worst = 0.0;
    for (int k = 0; k < 25; ++k) {
        GridMeasure mu = random_capped_measure(rng, 1.0, -6.0, 6.0, 400);
        double e_line = energy(mu, v);
        double e_sphere = energy_sphere(pushforward(mu), v);
        worst = std::max(worst, std::fabs(e_line - e_sphere));
    }
    push.pass = worst <= 1e-3;
    push.detail = fmt("max |E_line - E_sphere| = %.3g over 25 measures", worst);
    out.push_back(push);

    CheckResult ineq{"mixed_energy_inequality_and_convexity", true, ""};
    for (int k = 0; k < 60 && ineq.pass; ++k) {
        GridMeasure a = random_capped_measure(rng, 1.0, -5.0, 5.0, 200);
        GridMeasure b = random_capped_measure(rng, 1.0, -5.0, 5.0, 200);
        SphereMeasure sa = pushforward(a), sb = pushforward(b);
        double iaa = mixed_energy(sa, sa);
        double ibb = mixed_energy(sb, sb);
        double iab = mixed_energy(sa, sb);
        if (!(2.0 * iab <= iaa + ibb + 1e-9)) {
            ineq.pass = false;
            ineq.detail = fmt("2I(a,b)-I(a,a)-I(b,b) = %.3g",
                              2.0 * iab - iaa - ibb);
        }
        // midpoint convexity of mu -> I(mu, mu)
        std::vector<double> wm(a.weights().size());
        for (size_t i = 0; i < wm.size(); ++i)
            wm[i] = 0.5 * (a.weights()[i] + b.weights()[i]);
        GridMeasure mid(a.left(), a.h(), wm, a.cap());
        SphereMeasure sm = pushforward(mid);
        double imm = mixed_energy(sm, sm);
        if (!(imm <= 0.25 * iaa + 0.25 * ibb + 0.5 * iab + 1e-9)) {
            ineq.pass = false;
            ineq.detail = fmt("convexity gap = %.3g",
                              imm - (0.25 * iaa + 0.25 * ibb + 0.5 * iab));
        }
    }
    if (ineq.pass) ineq.detail = "60 random pairs, slack 1e-9";
    out.push_back(ineq);

    CheckResult levy{"levy_distance_metric_axioms", true, ""};
    for (int k = 0; k < 40 && levy.pass; ++k) {
        GridMeasure a = random_capped_measure(rng, 1.0, -4.0, 4.0, 150);
        GridMeasure b = random_capped_measure(rng, 1.0, -4.0, 4.0, 150);
        double dab = levy_distance(a, b), dba = levy_distance(b, a);
        double daa = levy_distance(a, a);
        if (std::fabs(dab - dba) > 1e-9 || daa > 1e-9 || dab < -1e-15) {
            levy.pass = false;
            levy.detail = fmt("d(a,b)=%.3g d(b,a)=%.3g d(a,a)=%.3g", dab, dba,
                              daa);
        }
    }
    if (levy.pass) levy.detail = "symmetry and d(a,a)=0 over 40 pairs";
    out.push_back(levy);
}

void suite_equilibrium(std::vector<CheckResult>& out) {
    // Cauchy solve against the closed form
    EquilibriumProblem prob;
    prob.theta = 1.0;
    prob.window_lo = -8.0;
    prob.window_hi = 8.0;
    prob.potential = cauchy_potential(1.0);
    prob.cells = 500;
    prob.tol = 5e-3;
    CheckResult cauchy{"cauchy_equilibrium_matches_closed_form", true, ""};
    try {
        EquilibriumSolution sol = solve(prob);
        double sup = 0.0;
        for (size_t i = 0; i < sol.measure.cells(); ++i) {
            double x = sol.measure.midpoint(i);
            if (x < -5.0 || x > 5.0) continue;
            sup = std::max(sup,
                           std::fabs(sol.measure.density(i) - cauchy_density(x)));
        }
        cauchy.pass = sup <= 2e-2 && sol.residual_support <= prob.tol;
        cauchy.detail = fmt("sup density err %.3g, residual %.3g", sup,
                            sol.residual_support);
    } catch (const std::exception& e) {
        cauchy.pass = false;
        cauchy.detail = e.what();
    }
    out.push_back(cauchy);

    // Jack closed form satisfies the variational conditions
    CheckResult jack{"jack_closed_form_variational_residual", true, ""};
    try {
        JackParams jp{1.0, 1.0};
        auto [slo, shi] = jack_support(jp);
        EquilibriumProblem jprob;
        jprob.theta = jp.theta;
        jprob.domain_lo = 0.0;
        jprob.window_lo = 0.0;
        jprob.window_hi = shi + 2.0;
        jprob.potential = jack_limit_potential(jp);
        jprob.cells = 800;
        GridMeasure ref = grid_from_density(
            [&](double x) { return jack_density(jp, x); }, 0.0, shi + 2.0, 800,
            1.0 / jp.theta);
        Residuals r = variational_residual(ref, jprob);
        jack.pass = r.r_support <= 3e-2;
        jack.detail = fmt("support residual %.3g (c=%.6g), edges (%.3g, %.3g)",
                          r.r_support, r.c, slo);
    } catch (const std::exception& e) {
        jack.pass = false;
        jack.detail = e.what();
    }
    out.push_back(jack);
}

void suite_ldp(std::vector<CheckResult>& out) {
    JackParams jp{1.0, 1.0};

    // closed vs exact partition at small N
    CheckResult part{"exact_partition_matches_closed_form", true, ""};
    for (int n = 1; n <= 3 && part.pass; ++n) {
        EnsembleSpec spec;
        spec.theta = jp.theta;
        spec.n = n;
        spec.lower = 0;
        spec.potential = jack_potential(jp, n);
        double lz = partition_auto(spec, 1e-10).log_z;
        double ref = jack_partition_closed(jp, n);
        double rel = std::fabs(lz - ref) / std::fabs(ref);
        if (rel > 1e-6) {
            part.pass = false;
            part.detail = fmt("N=%g rel err %.3g", static_cast<double>(n), rel);
        }
    }
    if (part.pass) part.detail = "N=1..3 relative error <= 1e-6";
    out.push_back(part);

    // detailed balance of the Metropolis kernel on a small chain
    CheckResult db{"mcmc_detailed_balance", true, ""};
    {
        EnsembleSpec spec;
        spec.theta = 1.0;
        spec.n = 2;
        spec.lower = 0;
        spec.upper = 6;
        spec.potential = jack_potential(jp, 2);
        McmcSampler s(spec, 5);
        for (int trial = 0; trial < 200 && db.pass; ++trial) {
            s.run(25);
            ParticleConfig cfg = s.state();
            for (int i = 0; i < 2; ++i) {
                for (int sgn : {-1, 1}) {
                    ParticleConfig moved = cfg;
                    moved.lambda[static_cast<size_t>(i)] += sgn;
                    if (!validate(moved)) continue;
                    double d = s.delta_log_weight(i, sgn);
                    double ref = log_weight(moved, spec.potential) -
                                 log_weight(cfg, spec.potential);
                    if (std::fabs(d - ref) > 1e-9) {
                        db.pass = false;
                        db.detail = fmt("delta mismatch %.3g at i=%g", d - ref,
                                        static_cast<double>(i));
                    }
                }
            }
        }
        if (db.pass) db.detail = "incremental deltas match full log-weights";
    }
    out.push_back(db);

    // free-energy gap shrinks along the closed-form scan
    CheckResult scan{"free_energy_gap_shrinks", true, ""};
    try {
        auto [slo, shi] = jack_support(jp);
        GridMeasure ref = grid_from_density(
            [&](double x) { return jack_density(jp, x); }, 0.0, shi + 1.0, 1500,
            1.0 / jp.theta);
        double reference = -jp.theta * energy(ref, jack_limit_potential(jp));
        auto spec_of = [&](int n) {
            EnsembleSpec spec;
            spec.theta = jp.theta;
            spec.n = n;
            spec.lower = 0;
            spec.potential = jack_potential(jp, n);
            return spec;
        };
        ScanResult sr = free_energy_scan(spec_of, {4, 8, 16, 32}, reference, &jp);
        double g4 = std::fabs(sr.rows.front().gap);
        double g32 = std::fabs(sr.rows.back().gap);
        scan.pass = g32 < g4 && g32 <= 0.1;
        scan.detail = fmt("|gap| N=4: %.4g, N=32: %.4g", g4, g32);
    } catch (const std::exception& e) {
        scan.pass = false;
        scan.detail = e.what();
    }
    out.push_back(scan);

    // ball probability monotone in delta
    CheckResult ball{"ball_probability_monotone_in_delta", true, ""};
    try {
        EnsembleSpec spec;
        spec.theta = 1.0;
        spec.n = 3;
        spec.lower = 0;
        spec.upper = 14;
        spec.potential = jack_potential(jp, 3);
        auto [slo, shi] = jack_support(jp);
        GridMeasure tgt = grid_from_density(
            [&](double x) { return jack_density(jp, x); }, 0.0, shi + 1.0, 300,
            1.0 / jp.theta);
        double p_small = ball_probability_exact(spec, tgt, 0.2, 0, 14);
        double p_big = ball_probability_exact(spec, tgt, 0.4, 0, 14);
        ball.pass = p_small <= p_big + 1e-12 && p_big <= 1e-12;
        ball.detail = fmt("log p(0.2)=%.4g <= log p(0.4)=%.4g", p_small, p_big);
    } catch (const std::exception& e) {
        ball.pass = false;
        ball.detail = e.what();
    }
    out.push_back(ball);
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite) {
    std::vector<CheckResult> out;
    bool all = suite == "all";
    bool known = all;
    if (all || suite == "kernels") {
        suite_kernels(out);
        known = true;
    }
    if (all || suite == "energy") {
        suite_energy(out);
        known = true;
    }
    if (all || suite == "equilibrium") {
        suite_equilibrium(out);
        known = true;
    }
    if (all || suite == "ldp") {
        suite_ldp(out);
        known = true;
    }
    if (!known) throw std::invalid_argument("unknown suite: " + suite);
    return out;
}

}  // namespace loggas
