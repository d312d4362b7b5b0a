#ifndef LOGGAS_ENSEMBLE_HPP
#define LOGGAS_ENSEMBLE_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>

#include "loggas/config.hpp"
#include "loggas/potential.hpp"

namespace loggas {

struct EnsembleSpec {
    double theta = 1.0;
    int n = 1;
    std::optional<long long> lower;  // a_N (nullopt = -inf)
    std::optional<long long> upper;  // b_N (nullopt = +inf)
    Potential potential;
};

// log Z_N = -N log Gamma(theta) + t theta N^2 + [N(N-1)/2] log(t theta N)
//           + sum_{i=1}^N log Gamma(i theta).
double jack_partition_closed(const JackParams& params, int n);

struct PartitionResult {
    double log_z = 0.0;      // log-sum-exp over the window
    double tail_bound = 0.0; // upper bound on the neglected mass (not log)
};

// Brute-force log Z over all configurations with lambda in [win_lo, win_hi],
// n <= 6, plus a comparison-series bound on the mass outside the window.
PartitionResult partition_exact(const EnsembleSpec& spec, long long win_lo,
                                long long win_hi);

// Doubles the window until the tail bound is below rel_tol * Z.
PartitionResult partition_auto(const EnsembleSpec& spec, double rel_tol);

// Enumeration helper shared with the ball-probability experiment: calls
// visit(config, log_weight) for every configuration in the window.
void enumerate_configs(const EnsembleSpec& spec, long long win_lo,
                       long long win_hi,
                       const std::function<void(const ParticleConfig&, double)>& visit);

struct WellposednessResult {
    bool ok = false;
    double witnessed_floor = 0.0;
    double violating_x = 0.0;  // meaningful only on failure
    std::string message;
};

// Checks theta' > 1/2 and samples the growth inequality
//   N theta V_N(x) - (theta' + (N-1)theta) log(1+x^2) >= floor
// on a log-spaced grid; returns the witnessed floor.
WellposednessResult wellposedness_check(const EnsembleSpec& spec);

// Metropolis chain with single-site +/-1 proposals; deterministic given
// the seed. Emitted states always satisfy validate().
class McmcSampler {
public:
    McmcSampler(const EnsembleSpec& spec, uint64_t seed);
    McmcSampler(const EnsembleSpec& spec, uint64_t seed,
                ParticleConfig initial);

    // One proposal (accept or reject); returns true when accepted.
    bool step();
    void run(long long steps);

    const ParticleConfig& state() const { return state_; }
    const EnsembleSpec& spec() const { return spec_; }
    long long accepted() const { return accepted_; }
    long long proposals() const { return proposals_; }

    // Log-weight change of the move lambda_i += s, without applying it.
    // The move must keep the configuration valid.
    double delta_log_weight(int i, int s) const;

private:
    double logq_gap(long long d, int k) const;  // log Q_theta(d + k*theta)

    EnsembleSpec spec_;
    ParticleConfig state_;
    std::mt19937_64 rng_;
    long long accepted_ = 0;
    long long proposals_ = 0;
    mutable std::unordered_map<uint64_t, double> logq_memo_;
};

// Default initial state: quantile discretization of `start` when given,
// otherwise the packed configuration lambda == max(a_N, 0).
ParticleConfig packed_config(const EnsembleSpec& spec);

}  // namespace loggas

#endif
