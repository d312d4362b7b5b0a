#include "loggas/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace loggas {

namespace {

// Log-spaced sample of |x| values (both signs) used to witness growth
// floors at construction time.
std::vector<double> floor_sample_points() {
    std::vector<double> xs;
    xs.push_back(0.0);
    for (double e = -3.0; e <= 6.0; e += 0.05) {
        double x = std::pow(10.0, e);
        xs.push_back(x);
        xs.push_back(-x);
    }
    return xs;
}

double witness_floor(const std::function<double(double)>& vn, int n,
                     double theta, double theta_prime) {
    double lo = kPlusInf;
    for (double x : floor_sample_points()) {
        double g = n * theta * vn(x) -
                   (theta_prime + (n - 1) * theta) * std::log1p(x * x);
        lo = std::min(lo, g);
    }
    return lo - 1e-9 * (1.0 + std::fabs(lo));
}

double jack_vn_eval(double theta, double t, int n, double x) {
    double ax = std::fabs(x);  // even reflection
    double nx = n * ax;
    return (std::lgamma(nx + 1.0) - nx * std::log(t * theta * n)) /
           (theta * n);
}

double jack_limit_eval(double theta, double t, double x) {
    double ax = std::fabs(x);
    if (ax == 0.0) return 0.0;
    return (ax * std::log(ax) - ax * std::log(std::exp(1.0) * t * theta)) /
           theta;
}

}  // namespace

Potential zero_potential() {
    return Potential([](double) { return 0.0; }, std::nullopt, kMinusInf);
}

Potential cauchy_potential(double theta) {
    GrowthCertificate cert{theta, 0.0};
    return Potential([](double x) { return std::log1p(x * x); }, cert, 0.0);
}

Potential jack_potential(const JackParams& params, int n) {
    if (n < 1) throw std::invalid_argument("jack_potential: n >= 1 required");
    double theta = params.theta, t = params.t;
    if (!(theta > 0.0) || !(t > 0.0))
        throw std::invalid_argument("jack_potential: theta, t must be > 0");
    auto eval = [theta, t, n](double x) { return jack_vn_eval(theta, t, n, x); };
    GrowthCertificate cert{1.0, witness_floor(eval, n, theta, 1.0)};
    return Potential(eval, cert, kPlusInf, /*n_dependent=*/true);
}

Potential jack_limit_potential(const JackParams& params) {
    double theta = params.theta, t = params.t;
    if (!(theta > 0.0) || !(t > 0.0))
        throw std::invalid_argument("jack_limit_potential: theta, t must be > 0");
    auto eval = [theta, t](double x) { return jack_limit_eval(theta, t, x); };
    GrowthCertificate cert{1.0, witness_floor(eval, 1, theta, 1.0)};
    return Potential(eval, cert, kPlusInf);
}

Potential table_potential(std::vector<double> xs, std::vector<double> vs,
                          GrowthCertificate cert, double tail_value) {
    if (xs.size() != vs.size() || xs.size() < 2)
        throw std::invalid_argument("table_potential: need >= 2 samples");
    if (!std::is_sorted(xs.begin(), xs.end()))
        throw std::invalid_argument("table_potential: xs must be sorted");
    auto eval = [xs = std::move(xs), vs = std::move(vs)](double x) {
        if (x <= xs.front()) return vs.front();
        if (x >= xs.back()) return vs.back();
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        size_t i = static_cast<size_t>(it - xs.begin());
        double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return vs[i - 1] + w * (vs[i] - vs[i - 1]);
    };
    return Potential(eval, cert, tail_value);
}

}  // namespace loggas
