#ifndef LOGGAS_EQUILIBRIUM_HPP
#define LOGGAS_EQUILIBRIUM_HPP

#include "loggas/measure.hpp"
#include "loggas/potential.hpp"

namespace loggas {

struct EquilibriumProblem {
    double theta = 1.0;
    // Domain interval Delta (may be half-infinite / infinite) and the
    // finite computational window inside it.
    double domain_lo = kMinusInf;
    double domain_hi = kPlusInf;
    double window_lo = -1.0;
    double window_hi = 1.0;
    Potential potential;
    size_t cells = 2000;
    double tol = 1e-3;         // variational residual tolerance
    int max_iter = 50000;
    double boundary_mass_tol = 1e-6;  // applies to artificial window edges only
    // optional starting weights (size == cells); default is uniform
    std::vector<double> init_weights;
};

struct EquilibriumSolution {
    GridMeasure measure;
    double c = 0.0;                   // variational constant
    double residual_support = 0.0;
    double residual_offsupport = 0.0;
    double f_value = 0.0;             // E_V at the solution (F_V^theta)
    int iterations = 0;
};

// Minimize the discretized energy over {0 <= w <= h/theta, sum w = 1} by
// projected gradient with Armijo backtracking; converged when the
// variational residual is below problem.tol. The window is doubled (within
// the domain) when an artificial boundary cell ends up carrying mass.
EquilibriumSolution solve(const EquilibriumProblem& problem);

// int (log|x-y|^{-1} + (1/2) V(x)) mu(dx) + V(y)/2, with the exact
// per-cell log integral (valid also when y lies inside a cell).
double effective_potential(const GridMeasure& mu, const Potential& v, double y);

struct Residuals {
    double r_support = 0.0;
    double r_offsupport = 0.0;
    double c = 0.0;
};

// KKT-style certificate from the variational conditions: cells are
// classified saturated / interior / void and the effective potential is
// compared against the constant c. Window-boundary cells are excluded
// from the off-support maximum.
Residuals variational_residual(const GridMeasure& mu,
                               const EquilibriumProblem& problem);

// theta * (E_V(mu) - f_theta) when mu passes the cap-and-support test for
// the problem's class; +inf otherwise. Atomic measures always map to +inf.
double rate_function(const GridMeasure& mu, const EquilibriumProblem& problem,
                     double f_theta);
double rate_function(const AtomicMeasure& mu, const EquilibriumProblem& problem,
                     double f_theta);

// Closed-form equilibrium densities.
double jack_density(const JackParams& params, double x);
double cauchy_density(double x);

// Support edges theta (sqrt(t) -/+ 1)^2.
std::pair<double, double> jack_support(const JackParams& params);

// CDF of the closed-form Jack density, via a precomputed cumulative table.
class JackCdf {
public:
    explicit JackCdf(const JackParams& params, size_t table_points = 20000);
    double operator()(double x) const;

private:
    JackParams params_;
    double lo_ = 0.0, hi_ = 0.0;  // arccot-branch support
    double plateau_mass_ = 0.0;
    std::vector<double> cum_;     // cumulative over [lo_, hi_]
};

}  // namespace loggas

#endif
