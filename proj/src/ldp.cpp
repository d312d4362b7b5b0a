#include "loggas/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace loggas {

void ScanResult::write_csv(std::ostream& os) const {
    os << "N,value,reference,gap,tail_bound\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", r.n,
                      r.value, r.reference, r.gap, r.tail_bound);
        os << buf;
    }
}

double scaled_log_partition(const EnsembleSpec& spec, PartitionMethod method,
                            const JackParams* jack, double rel_tol) {
    double log_z;
    if (method == PartitionMethod::kClosed) {
        if (!jack)
            throw std::invalid_argument(
                "scaled_log_partition: closed form needs the Jack family");
        log_z = jack_partition_closed(*jack, spec.n);
    } else {
        if (spec.n > 6)
            throw std::invalid_argument("scaled_log_partition: exact needs N <= 6");
        log_z = partition_auto(spec, rel_tol).log_z;
    }
    double dn = static_cast<double>(spec.n);
    return log_z - dn * (dn - 1.0) * spec.theta * std::log(dn);
}

ScanResult free_energy_scan(const std::function<EnsembleSpec(int)>& spec_of,
                            const std::vector<int>& n_list, double reference,
                            const JackParams* jack) {
    if (n_list.empty())
        throw std::invalid_argument("free_energy_scan: empty N list");
    ScanResult out;
    out.theta = spec_of(n_list.front()).theta;
    if (jack) {
        out.model = "jack";
        out.t = jack->t;
    }
    int prev = 0;
    for (int n : n_list) {
        if (n <= prev)
            throw std::invalid_argument("free_energy_scan: N list must increase");
        prev = n;
        EnsembleSpec spec = spec_of(n);
        ScanRow row;
        row.n = n;
        double dn = static_cast<double>(n);
        if (jack) {
            row.value = scaled_log_partition(spec, PartitionMethod::kClosed, jack) /
                        (dn * dn);
            row.tail_bound = 0.0;
        } else {
            PartitionResult pr = partition_auto(spec, 1e-10);
            row.value = (pr.log_z - dn * (dn - 1.0) * spec.theta * std::log(dn)) /
                        (dn * dn);
            row.tail_bound = pr.tail_bound;
        }
        row.reference = reference;
        row.gap = row.value - row.reference;
        out.rows.push_back(row);
    }
    return out;
}

double ball_probability_exact(const EnsembleSpec& spec,
                              const GridMeasure& target, double delta,
                              long long win_lo, long long win_hi,
                              double* tail_bound_out) {
    PartitionResult pr = partition_exact(spec, win_lo, win_hi);
    if (spec.lower) win_lo = std::max(win_lo, *spec.lower);
    if (spec.upper) win_hi = std::min(win_hi, *spec.upper);
    Cdf tgt = Cdf::from(target);
    std::vector<double> hits;
    enumerate_configs(spec, win_lo, win_hi,
                      [&](const ParticleConfig& cfg, double lw) {
                          AtomicMeasure mu = empirical_measure(cfg);
                          if (levy_distance(Cdf::from(mu), tgt) < delta)
                              hits.push_back(lw);
                      });
    if (tail_bound_out) {
        // neglected probability <= tail / Z_window
        *tail_bound_out = pr.tail_bound * std::exp(-pr.log_z);
    }
    if (hits.empty()) return kMinusInf;
    return log_sum_exp(hits) - pr.log_z;
}

double ks_compare(const std::vector<ParticleConfig>& samples,
                  const std::function<double(double)>& reference_cdf) {
    if (samples.empty())
        throw std::invalid_argument("ks_compare: need at least one sample");
    std::vector<double> pts;
    for (const auto& cfg : samples) {
        auto l = positions(cfg);
        double dn = static_cast<double>(cfg.n);
        for (double v : l) pts.push_back(v / dn);
    }
    std::sort(pts.begin(), pts.end());
    double m = static_cast<double>(pts.size());
    double ks = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        double f = reference_cdf(pts[i]);
        double lo = static_cast<double>(i) / m;        // empirical left limit
        double hi = static_cast<double>(i + 1) / m;    // empirical value
        ks = std::max(ks, std::max(std::fabs(hi - f), std::fabs(f - lo)));
    }
    return ks;
}

}  // namespace loggas
