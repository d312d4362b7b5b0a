#include "loggas/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace loggas {

namespace {

// Projection onto {0 <= w_i <= u, sum w_i = 1} by bisection on the dual
// shift tau, w_i = clamp(v_i - tau, 0, u).
void project_capped_simplex(std::vector<double>& v, double u) {
    const size_t m = v.size();
    if (u * static_cast<double>(m) < 1.0 - 1e-12)
        throw std::invalid_argument("capped simplex projection: infeasible cap");
    double lo = v[0], hi = v[0];
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    lo -= u + 1.0;
    hi += 1.0;
    auto mass = [&](double tau) {
        double s = 0.0;
        for (double x : v) s += std::clamp(x - tau, 0.0, u);
        return s;
    };
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mass(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double tau = 0.5 * (lo + hi);
    double s = 0.0;
    for (double& x : v) {
        x = std::clamp(x - tau, 0.0, u);
        s += x;
    }
    // exact renormalization of the residual bisection error
    if (s > 0.0)
        for (double& x : v) x /= s;
}

// antiderivative of log|u|: G(u) = u log|u| - u, G(0) = 0
double log_antideriv(double u) {
    if (u == 0.0) return 0.0;
    return u * std::log(std::fabs(u)) - u;
}

struct Discretization {
    double h;
    std::vector<double> x;     // cell midpoints
    std::vector<double> K;     // dense kernel matrix (row-major, symmetric)
    std::vector<double> vpot;  // V at midpoints

    double objective(const std::vector<double>& w) const {
        size_t m = x.size();
        KahanSum s;
        for (size_t a = 0; a < m; ++a) {
            if (w[a] == 0.0) continue;
            double row = 0.0;
            const double* Ka = K.data() + a * m;
            for (size_t b = 0; b < m; ++b) row += Ka[b] * w[b];
            s.add(w[a] * (row + vpot[a]));
        }
        return s.value();
    }

    void gradient(const std::vector<double>& w, std::vector<double>& g) const {
        size_t m = x.size();
        for (size_t a = 0; a < m; ++a) {
            double row = 0.0;
            const double* Ka = K.data() + a * m;
            for (size_t b = 0; b < m; ++b) row += Ka[b] * w[b];
            g[a] = 2.0 * row + vpot[a];
        }
    }
};

Discretization discretize(const EquilibriumProblem& p, double lo, double hi) {
    Discretization d;
    size_t m = p.cells;
    d.h = (hi - lo) / static_cast<double>(m);
    d.x.resize(m);
    d.vpot.resize(m);
    for (size_t i = 0; i < m; ++i) {
        d.x[i] = lo + (static_cast<double>(i) + 0.5) * d.h;
        d.vpot[i] = p.potential(d.x[i]);
    }
    d.K.assign(m * m, 0.0);
    // K_ab = (1/h) * int_{cell b} log|x - x_a|^{-1} dx (exact; symmetric in
    // a,b since the integrand depends on the midpoint distance only). Using
    // the same quadrature as effective_potential makes the KKT conditions of
    // this objective coincide with a zero variational residual.
    for (size_t a = 0; a < m; ++a) {
        for (size_t b = a; b < m; ++b) {
            double lo_b = static_cast<double>(b - a) * d.h - 0.5 * d.h;
            double hi_b = lo_b + d.h;
            double k = -(log_antideriv(hi_b) - log_antideriv(lo_b)) / d.h;
            d.K[a * m + b] = k;
            d.K[b * m + a] = k;
        }
    }
    return d;
}

Residuals residual_of_weights(const GridMeasure& mu,
                              const EquilibriumProblem& p);

struct SolveAttempt {
    GridMeasure measure;
    Residuals res;
    double f_value;
    int iterations;
    bool converged;
};

SolveAttempt solve_on_window(const EquilibriumProblem& p, double lo, double hi) {
    Discretization d = discretize(p, lo, hi);
    size_t m = p.cells;
    double u = d.h / p.theta;  // per-cell mass cap

    std::vector<double> w = (p.init_weights.size() == m)
                                ? p.init_weights
                                : std::vector<double>(m, 1.0 / static_cast<double>(m));
    project_capped_simplex(w, u);

    std::vector<double> g(m), wn(m), gn(m);
    double f = d.objective(w);
    d.gradient(w, g);
    double step = 1.0 / static_cast<double>(m);
    const double sigma = 1e-4;

    auto make_measure = [&](const std::vector<double>& wv) {
        return GridMeasure(lo, d.h, wv, 1.0 / p.theta);
    };

    Residuals res;
    int it = 0;
    bool converged = false;
    const int check_every = 25;
    for (it = 1; it <= p.max_iter; ++it) {
        // Armijo backtracking along the projected-gradient arc
        double fn = f;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (size_t i = 0; i < m; ++i) wn[i] = w[i] - step * g[i];
            project_capped_simplex(wn, u);
            double descent = 0.0;
            for (size_t i = 0; i < m; ++i) descent += g[i] * (wn[i] - w[i]);
            fn = d.objective(wn);
            if (fn <= f + sigma * descent) {
                moved = descent < 0.0;
                break;
            }
            step *= 0.5;
        }
        if (!moved && step < 1e-18) break;
        d.gradient(wn, gn);
        // Barzilai-Borwein step for the next iteration
        double sy = 0.0, ss = 0.0;
        for (size_t i = 0; i < m; ++i) {
            double dw = wn[i] - w[i];
            ss += dw * dw;
            sy += dw * (gn[i] - g[i]);
        }
        if (sy > 0.0) step = std::clamp(ss / sy, 1e-12, 1e3);
        else step *= 2.0;
        w.swap(wn);
        g.swap(gn);
        f = fn;

        if (it % check_every == 0) {
            res = residual_of_weights(make_measure(w), p);
            if (std::max(res.r_support, res.r_offsupport) <= p.tol) {
                converged = true;
                break;
            }
        }
    }
    GridMeasure mu = make_measure(w);
    if (!converged) {
        res = residual_of_weights(mu, p);
        converged = std::max(res.r_support, res.r_offsupport) <= p.tol;
    }
    return SolveAttempt{mu, res, energy(mu, p.potential), it, converged};
}

Residuals residual_of_weights(const GridMeasure& mu,
                              const EquilibriumProblem& p) {
    size_t m = mu.cells();
    double u = mu.h() / p.theta;
    double slack = 1e-8 * u;
    std::vector<double> ep(m);
    for (size_t i = 0; i < m; ++i)
        ep[i] = effective_potential(mu, p.potential, mu.midpoint(i));

    double c;
    {
        KahanSum s;
        size_t n_int = 0;
        for (size_t i = 1; i + 1 < m; ++i) {
            double w = mu.weights()[i];
            if (w > slack && w < u - slack) {
                s.add(ep[i]);
                ++n_int;
            }
        }
        if (n_int > 0) {
            c = s.value() / static_cast<double>(n_int);
        } else {
            double sat_max = kMinusInf, void_min = kPlusInf;
            for (size_t i = 0; i < m; ++i) {
                double w = mu.weights()[i];
                if (w >= u - slack) sat_max = std::max(sat_max, ep[i]);
                if (w <= slack) void_min = std::min(void_min, ep[i]);
            }
            if (!std::isfinite(sat_max)) sat_max = void_min;
            if (!std::isfinite(void_min)) void_min = sat_max;
            c = 0.5 * (sat_max + void_min);
        }
    }

    Residuals r;
    r.c = c;
    for (size_t i = 0; i < m; ++i) {
        // window-boundary cells are grid-ambiguous and excluded from both maxima
        if (i == 0 || i + 1 == m) continue;
        double w = mu.weights()[i];
        if (w > slack)  // support of mu
            r.r_support = std::max(r.r_support, ep[i] - c);
        if (w < u - slack)  // support of theta^{-1} lambda - mu
            r.r_offsupport = std::max(r.r_offsupport, c - ep[i]);
    }
    return r;
}

}  // namespace

double effective_potential(const GridMeasure& mu, const Potential& v, double y) {
    size_t m = mu.cells();
    double h = mu.h();
    KahanSum s;
    for (size_t i = 0; i < m; ++i) {
        double w = mu.weights()[i];
        if (w == 0.0) continue;
        double a = mu.left() + static_cast<double>(i) * h;
        double b = a + h;
        // exact \int_a^b log|x-y|^{-1} dx for the piecewise-constant cell
        double logpart = -(log_antideriv(b - y) - log_antideriv(a - y));
        double xm = mu.midpoint(i);
        s.add((w / h) * logpart + w * 0.5 * v(xm));
    }
    s.add(0.5 * v(y));
    return s.value();
}

Residuals variational_residual(const GridMeasure& mu,
                               const EquilibriumProblem& problem) {
    return residual_of_weights(mu, problem);
}

EquilibriumSolution solve(const EquilibriumProblem& problem) {
    if (!(problem.theta > 0.0)) throw std::invalid_argument("solve: theta <= 0");
    double lo = problem.window_lo, hi = problem.window_hi;
    if (!(hi - lo >= problem.theta))
        throw std::invalid_argument("solve: window shorter than theta");

    SolveAttempt att = solve_on_window(problem, lo, hi);
    for (int ext = 0; ext < 3; ++ext) {
        // artificial-boundary mass check; domain edges are genuine
        double half = 0.5 * (hi - lo);
        bool lo_artificial = lo > problem.domain_lo;
        bool hi_artificial = hi < problem.domain_hi;
        bool bad_lo = lo_artificial &&
                      att.measure.weights().front() > problem.boundary_mass_tol;
        bool bad_hi = hi_artificial &&
                      att.measure.weights().back() > problem.boundary_mass_tol;
        if (!bad_lo && !bad_hi) break;
        if (bad_lo) lo = std::max(problem.domain_lo, lo - half);
        if (bad_hi) hi = std::min(problem.domain_hi, hi + half);
        att = solve_on_window(problem, lo, hi);
    }
    if (!att.converged)
        throw std::runtime_error("solve: no convergence within max iterations");

    EquilibriumSolution sol{att.measure, att.res.c, att.res.r_support,
                            att.res.r_offsupport, att.f_value, att.iterations};
    return sol;
}

double rate_function(const GridMeasure& mu, const EquilibriumProblem& problem,
                     double f_theta) {
    double cap = 1.0 / problem.theta;
    for (size_t i = 0; i < mu.cells(); ++i) {
        if (mu.weights()[i] <= 0.0) continue;
        if (mu.density(i) > cap * (1.0 + 1e-6)) return kPlusInf;
        double x = mu.midpoint(i);
        if (x < problem.domain_lo || x > problem.domain_hi) return kPlusInf;
    }
    double e = energy(mu, problem.potential);
    if (e == kPlusInf) return kPlusInf;
    return problem.theta * (e - f_theta);
}

double rate_function(const AtomicMeasure&, const EquilibriumProblem&, double) {
    return kPlusInf;  // atoms violate the density cap
}

std::pair<double, double> jack_support(const JackParams& p) {
    double s = std::sqrt(p.t);
    return {p.theta * (s - 1.0) * (s - 1.0), p.theta * (s + 1.0) * (s + 1.0)};
}

double jack_density(const JackParams& p, double x) {
    auto [lo, hi] = jack_support(p);
    if (p.t < 1.0 && x >= 0.0 && x < lo) return 1.0 / p.theta;  // plateau
    if (x <= lo || x >= hi) return 0.0;
    double num = x + p.theta * (p.t - 1.0);
    double disc = 4.0 * p.theta * p.t * x - num * num;
    if (disc <= 0.0) return 0.0;
    double arccot = 0.5 * M_PI - std::atan(num / std::sqrt(disc));  // in (0, pi)
    return arccot / (p.theta * M_PI);
}

double cauchy_density(double x) { return 1.0 / (M_PI * (1.0 + x * x)); }

JackCdf::JackCdf(const JackParams& params, size_t table_points)
    : params_(params) {
    auto [lo, hi] = jack_support(params);
    lo_ = lo;
    hi_ = hi;
    plateau_mass_ = (params.t < 1.0) ? lo / params.theta : 0.0;
    size_t n = std::max<size_t>(table_points, 16);
    cum_.resize(n + 1);
    double h = (hi_ - lo_) / static_cast<double>(n);
    cum_[0] = 0.0;
    double prev = jack_density(params_, lo_ + 1e-14);
    for (size_t i = 1; i <= n; ++i) {
        double xm = lo_ + (static_cast<double>(i) - 0.5) * h;
        double xr = lo_ + static_cast<double>(i) * h;
        double fm = jack_density(params_, xm);
        double fr = (i == n) ? jack_density(params_, xr - 1e-14)
                             : jack_density(params_, xr);
        cum_[i] = cum_[i - 1] + h * (prev + 4.0 * fm + fr) / 6.0;  // Simpson
        prev = fr;
    }
    // normalize the arccot branch so total mass is exactly 1
    double target = 1.0 - plateau_mass_;
    if (cum_.back() > 0.0) {
        double scale = target / cum_.back();
        for (double& c : cum_) c *= scale;
    }
}

double JackCdf::operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (params_.t < 1.0 && x < lo_) return x / params_.theta;
    if (x <= lo_) return plateau_mass_;
    if (x >= hi_) return 1.0;
    double u = (x - lo_) / (hi_ - lo_) * static_cast<double>(cum_.size() - 1);
    size_t i = static_cast<size_t>(u);
    if (i >= cum_.size() - 1) i = cum_.size() - 2;
    double w = u - static_cast<double>(i);
    return plateau_mass_ + cum_[i] + w * (cum_[i + 1] - cum_[i]);
}

}  // namespace loggas
