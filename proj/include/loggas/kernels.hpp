#ifndef LOGGAS_KERNELS_HPP
#define LOGGAS_KERNELS_HPP

#include <utility>

#include "loggas/common.hpp"
#include "loggas/potential.hpp"

namespace loggas {

// Point on the circle S of radius 1/2 centered at (0, 1/2). The north
// pole (0, 1) is the image of the point at infinity.
struct SpherePoint {
    double x1 = 0.0;
    double x2 = 0.0;

    bool is_north_pole() const { return x1 == 0.0 && x2 == 1.0; }
};

inline SpherePoint north_pole() { return {0.0, 1.0}; }

// |x1^2 + (x2-1/2)^2 - 1/4| tolerance for membership on S.
inline constexpr double kCircleTol = 1e-9;

bool on_circle(const SpherePoint& p, double tol = kCircleTol);

// log Q_theta(x) = lgamma(x+1) + lgamma(x+theta) - lgamma(x) - lgamma(x+1-theta).
// Requires x > 0 and x + 1 - theta > 0.
double log_q_theta(double x, double theta);

// Logs of the sandwich bounds: 2 theta log x -/+ (1+theta)^3 / x, valid
// for x >= theta > 0.
std::pair<double, double> q_theta_sandwich(double x, double theta);

// k_V(x,y) = log|x-y|^{-1} + V(x)/2 + V(y)/2; +inf on the diagonal.
double kernel_kv(double x, double y, const Potential& v);

// Inverse stereographic projection T(x) = (x/(1+x^2), x^2/(1+x^2)).
SpherePoint stereo(double x);

// T^{-1}(p) = x1/(1-x2); rejects points within 1e-9 of the north pole.
double stereo_inv(const SpherePoint& p);

// ||T(x)-T(y)|| = |x-y| / (sqrt(1+x^2) sqrt(1+y^2)).
double stereo_dist(double x, double y);

// V(T^{-1}(p)) - log(1 + T^{-1}(p)^2) off the pole; tail_value at the pole.
double compactified_potential(const SpherePoint& p, const Potential& v,
                              double tail_value);

// F_V(p,q) = log||p-q||^{-1} + V(p)/2 + V(q)/2 on S; +inf on the diagonal.
double kernel_fv(const SpherePoint& p, const SpherePoint& q,
                 const Potential& v, double tail_value);

}  // namespace loggas

#endif
