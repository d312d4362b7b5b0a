#ifndef LOGGAS_LDP_HPP
#define LOGGAS_LDP_HPP

#include <iosfwd>

#include "loggas/ensemble.hpp"
#include "loggas/equilibrium.hpp"
#include "loggas/measure.hpp"

namespace loggas {

struct ScanRow {
    int n = 0;
    double value = 0.0;       // (1/N^2) log Z'_N
    double reference = 0.0;   // -theta * F_V^theta
    double gap = 0.0;         // value - reference
    double tail_bound = 0.0;  // neglected mass (exact path), 0 for closed form
};

struct ScanResult {
    std::string model;
    double theta = 0.0;
    double t = 0.0;
    std::vector<ScanRow> rows;  // n strictly increasing

    void write_csv(std::ostream& os) const;
};

enum class PartitionMethod { kExact, kClosed };

// log Z'_N = log Z_N - N(N-1) theta log N. Exact needs N <= 6; closed
// needs jack != nullptr (the Jack family's closed-form partition).
double scaled_log_partition(const EnsembleSpec& spec, PartitionMethod method,
                            const JackParams* jack = nullptr,
                            double rel_tol = 1e-10);

// Rows (N, (1/N^2) log Z'_N) against the reference -theta * F_V^theta.
// spec_of(n) supplies the ensemble at each N; jack enables the closed form.
ScanResult free_energy_scan(const std::function<EnsembleSpec(int)>& spec_of,
                            const std::vector<int>& n_list, double reference,
                            const JackParams* jack = nullptr);

// Exact log-probability of {d_Levy(mu_N, target) < delta} by enumeration
// over the window; tail_bound_out reports the neglected-mass bound.
double ball_probability_exact(const EnsembleSpec& spec,
                              const GridMeasure& target, double delta,
                              long long win_lo, long long win_hi,
                              double* tail_bound_out = nullptr);

// Kolmogorov-Smirnov statistic between the pooled empirical CDF of the
// rescaled particles l_i/N and a reference CDF.
double ks_compare(const std::vector<ParticleConfig>& samples,
                  const std::function<double(double)>& reference_cdf);

}  // namespace loggas

#endif
