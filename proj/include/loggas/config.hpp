#ifndef LOGGAS_CONFIG_HPP
#define LOGGAS_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "loggas/measure.hpp"
#include "loggas/potential.hpp"

namespace loggas {

// A particle configuration: the partition lambda plus the shifted
// positions l_i = lambda_i + (N - i) * theta.
struct ParticleConfig {
    int n = 0;
    double theta = 1.0;
    std::vector<long long> lambda;          // lambda_1 .. lambda_N
    std::optional<long long> lower;         // a_N (nullopt = -inf)
    std::optional<long long> upper;         // b_N (nullopt = +inf)
};

// Weakly decreasing within bounds. Exact integer arithmetic; the theta
// shifts cancel in lambda-space.
bool validate(const ParticleConfig& cfg);

// Strictly decreasing positions l_i; throws on invalid input.
std::vector<double> positions(const ParticleConfig& cfg);

// Atoms at l_i / N, each of mass 1/N.
AtomicMeasure empirical_measure(const ParticleConfig& cfg);

// Quantile discretization of a capped density: y_i solves
// CDF(y_i) = (i - 1/2)/N, then l_i is the largest point of
// Z + (N-i)*theta below N * y_{N-i+1}. Asserts validity of the result.
ParticleConfig quantile_config(const GridMeasure& density, int n, double theta);

// log W(l) = sum_{i<j} log Q_theta(l_i - l_j) - theta N sum_i V(l_i / N).
double log_weight(const ParticleConfig& cfg, const Potential& v);

// N^{-2} sum_{i != j} k_V(l_i/N, l_j/N), diagonal excluded.
double discrete_energy(const ParticleConfig& cfg, const Potential& v);

// Plain-text line format: `N theta a b : lambda_1 ... lambda_N`.
std::string to_line(const ParticleConfig& cfg);
ParticleConfig config_from_line(const std::string& line);

}  // namespace loggas

#endif
