#ifndef LOGGAS_POTENTIAL_HPP
#define LOGGAS_POTENTIAL_HPP

#include <functional>
#include <optional>
#include <utility>

#include "loggas/common.hpp"

namespace loggas {

// Witness for the growth condition
//   N*theta*V_N(x) - (theta_prime + (N-1)*theta) * log(1+x^2) >= floor_const,
// required with theta_prime > 1/2 whenever the lattice is unbounded.
struct GrowthCertificate {
    double theta_prime = 0.0;
    double floor_const = 0.0;
};

struct JackParams {
    double theta = 1.0;
    double t = 1.0;
};

class Potential {
public:
    Potential() = default;
    Potential(std::function<double(double)> eval,
              std::optional<GrowthCertificate> cert,
              double tail_value,
              bool n_dependent = false)
        : eval_(std::move(eval)),
          growth_(cert),
          tail_value_(tail_value),
          n_dependent_(n_dependent) {}

    double operator()(double x) const { return eval_(x); }

    const std::optional<GrowthCertificate>& growth() const { return growth_; }

    // liminf_{|x|->inf} V(x) - log(1+x^2); the value of the compactified
    // potential at the north pole. Supplied analytically per model.
    double tail_value() const { return tail_value_; }

    bool n_dependent() const { return n_dependent_; }

private:
    std::function<double(double)> eval_ = [](double) { return 0.0; };
    std::optional<GrowthCertificate> growth_;
    double tail_value_ = kMinusInf;
    bool n_dependent_ = false;
};

// V == 0, no growth certificate (finite lattices only).
Potential zero_potential();

// V(x) = log(1+x^2); certificate theta' = theta, valid only for theta > 1/2.
Potential cauchy_potential(double theta);

// V_N(x) = (theta*N)^{-1} [lgamma(N x + 1) - N x log(t theta N)], extended
// to x < 0 by even reflection.
Potential jack_potential(const JackParams& params, int n);

// Limit potential V(x) = theta^{-1} (x log x - x log(e t theta)), even
// reflection for x < 0, V(0) = 0.
Potential jack_limit_potential(const JackParams& params);

// Piecewise-linear interpolation of tabulated (x, V(x)) samples with a
// caller-supplied certificate; constant extrapolation outside the table.
Potential table_potential(std::vector<double> xs, std::vector<double> vs,
                          GrowthCertificate cert, double tail_value);

}  // namespace loggas

#endif
