#include "loggas/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace loggas {

bool on_circle(const SpherePoint& p, double tol) {
    double r2 = p.x1 * p.x1 + (p.x2 - 0.5) * (p.x2 - 0.5);
    return std::fabs(r2 - 0.25) <= tol;
}

double log_q_theta(double x, double theta) {
    if (!(theta > 0.0)) throw std::domain_error("log_q_theta: theta must be > 0");
    if (!(x > 0.0) || !(x + 1.0 - theta > 0.0))
        throw std::domain_error("log_q_theta: gamma argument <= 0");
    return std::lgamma(x + 1.0) + std::lgamma(x + theta) - std::lgamma(x) -
           std::lgamma(x + 1.0 - theta);
}

std::pair<double, double> q_theta_sandwich(double x, double theta) {
    if (!(theta > 0.0) || x < theta)
        throw std::domain_error("q_theta_sandwich: requires x >= theta > 0");
    double mid = 2.0 * theta * std::log(x);
    double slack = (1.0 + theta) * (1.0 + theta) * (1.0 + theta) / x;
    return {mid - slack, mid + slack};
}

double kernel_kv(double x, double y, const Potential& v) {
    if (x == y) return kPlusInf;
    return -std::log(std::fabs(x - y)) + 0.5 * (v(x) + v(y));
}

SpherePoint stereo(double x) {
    double d = 1.0 + x * x;
    return {x / d, x * x / d};
}

double stereo_inv(const SpherePoint& p) {
    if (!on_circle(p)) throw std::domain_error("stereo_inv: point not on circle");
    double denom = 1.0 - p.x2;
    if (std::fabs(denom) < 1e-9)
        throw std::domain_error("stereo_inv: point too close to north pole");
    return p.x1 / denom;
}

double stereo_dist(double x, double y) {
    return std::fabs(x - y) /
           (std::sqrt(1.0 + x * x) * std::sqrt(1.0 + y * y));
}

double compactified_potential(const SpherePoint& p, const Potential& v,
                              double tail_value) {
    if (!on_circle(p))
        throw std::domain_error("compactified_potential: point not on circle");
    if (p.is_north_pole() || std::fabs(1.0 - p.x2) < 1e-9) return tail_value;
    double x = stereo_inv(p);
    return v(x) - std::log1p(x * x);
}

double kernel_fv(const SpherePoint& p, const SpherePoint& q,
                 const Potential& v, double tail_value) {
    double dx = p.x1 - q.x1;
    double dy = p.x2 - q.x2;
    double d = std::sqrt(dx * dx + dy * dy);
    if (d == 0.0) return kPlusInf;
    return -std::log(d) + 0.5 * compactified_potential(p, v, tail_value) +
           0.5 * compactified_potential(q, v, tail_value);
}

}  // namespace loggas
