#ifndef LOGGAS_MEASURE_HPP
#define LOGGAS_MEASURE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "loggas/kernels.hpp"
#include "loggas/potential.hpp"

namespace loggas {

// Atomic probability measure (empirical measures live here).
struct AtomicMeasure {
    // (location, mass) pairs; masses positive and summing to 1.
    std::vector<std::pair<double, double>> atoms;

    double total_mass() const;
};

// Probability measure with piecewise-constant density on a uniform grid.
// weights[i] is the mass of cell [left + i*h, left + (i+1)*h). An optional
// density cap (theta^{-1}) is enforced as weight <= h*cap.
class GridMeasure {
public:
    GridMeasure(double left, double h, std::vector<double> weights,
                std::optional<double> cap = std::nullopt);

    double left() const { return left_; }
    double h() const { return h_; }
    double right() const { return left_ + h_ * static_cast<double>(weights_.size()); }
    const std::vector<double>& weights() const { return weights_; }
    std::optional<double> cap() const { return cap_; }
    size_t cells() const { return weights_.size(); }

    double midpoint(size_t i) const { return left_ + (static_cast<double>(i) + 0.5) * h_; }
    double density(size_t i) const { return weights_[i] / h_; }

    // CDF at x (continuous piecewise linear).
    double cdf(double x) const;
    // Smallest x with cdf(x) = q (left endpoint of flat stretches).
    double quantile(double q) const;

    void write_csv(std::ostream& os) const;
    static GridMeasure read_csv(std::istream& is);
    void write_cdf_csv(std::ostream& os) const;

private:
    double left_;
    double h_;
    std::vector<double> weights_;
    std::optional<double> cap_;
    std::vector<double> cum_;  // cum_[i] = mass of cells [0, i)
};

// Build a capped grid measure by sampling a density at cell midpoints and
// renormalizing; throws if the profile cannot fit under the cap.
GridMeasure grid_from_density(const std::function<double(double)>& f,
                              double left, double right, size_t cells,
                              std::optional<double> cap = std::nullopt);

// Measure on the circle S. Atoms carry an optional self-width: the
// arclength-scale of the grid cell they came from, used for the exact
// same-cell quadrature term; width 0 means a genuine point mass.
struct SphereAtom {
    SpherePoint p;
    double mass = 0.0;
    double self_width = 0.0;
    double line_x = 0.0;  // preimage, kept for the compactified potential
};

struct SphereMeasure {
    std::vector<SphereAtom> atoms;
    double mass_at_np = 0.0;

    double total_mass() const;
};

// Weighted energy E_V(mu): midpoint cross-terms plus the exact
// same-cell formula h^2 (3/2 - log h) per unit squared density.
double energy(const GridMeasure& mu, const Potential& v);

// Pushforward under T; mass preserved, nothing lands on the pole.
SphereMeasure pushforward(const GridMeasure& mu);

// E_cal_V(nu) over S; +inf when nu charges the north pole.
double energy_sphere(const SphereMeasure& nu, const Potential& v);

// I(mu, nu) = sum of log||x-y||^{-1} over atom pairs; the diagonal
// self-term is included when the arguments alias the same measure.
double mixed_energy(const SphereMeasure& mu, const SphereMeasure& nu);

// Generic CDF with jumps: piecewise linear between breakpoints,
// right-continuous at them.
struct Cdf {
    std::vector<double> xs;       // sorted breakpoints
    std::vector<double> f_left;   // left limit at xs[i]
    std::vector<double> f_right;  // value at xs[i]

    double value(double x) const;
    double value_left(double x) const;

    static Cdf from(const GridMeasure& mu);
    static Cdf from(const AtomicMeasure& mu);
};

// Classical Levy distance, by bisection on the CDF-envelope condition
//   F(x - d) - d <= G(x) <= F(x + d) + d  for all x.
double levy_distance(const Cdf& f, const Cdf& g);
double levy_distance(const GridMeasure& mu, const GridMeasure& nu);
double levy_distance(const AtomicMeasure& mu, const GridMeasure& nu);
double levy_distance(const AtomicMeasure& mu, const AtomicMeasure& nu);

// Restrict a capped measure to [a, b] and redeposit the lost mass
// uniformly on the slack cells (density <= cap - eps). Throws when the
// slack set is too small to absorb the lost mass.
GridMeasure truncate_measure(const GridMeasure& mu, double a, double b,
                             double eps);

}  // namespace loggas

#endif
