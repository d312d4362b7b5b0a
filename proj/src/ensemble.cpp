#include "loggas/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "loggas/kernels.hpp"

namespace loggas {

double jack_partition_closed(const JackParams& p, int n) {
    if (n < 1) throw std::invalid_argument("jack_partition_closed: n >= 1");
    double theta = p.theta, t = p.t;
    KahanSum s;
    s.add(-static_cast<double>(n) * std::lgamma(theta));
    s.add(t * theta * static_cast<double>(n) * static_cast<double>(n));
    // exponent theta*n*(n-1)/2: the n(n-1)/2 variant only matches the
    // enumerated sum at theta = 1 (verified against brute force)
    s.add(0.5 * theta * static_cast<double>(n) * static_cast<double>(n - 1) *
          std::log(t * theta * static_cast<double>(n)));
    for (int i = 1; i <= n; ++i) s.add(std::lgamma(static_cast<double>(i) * theta));
    return s.value();
}

ParticleConfig packed_config(const EnsembleSpec& spec) {
    ParticleConfig cfg;
    cfg.n = spec.n;
    cfg.theta = spec.theta;
    cfg.lower = spec.lower;
    cfg.upper = spec.upper;
    long long base = spec.lower.value_or(0);
    if (spec.upper && base > *spec.upper) base = *spec.upper;
    cfg.lambda.assign(static_cast<size_t>(spec.n), base);
    return cfg;
}

namespace {

double binom_count(long long w, int n) {
    // number of weakly decreasing n-tuples in a window of w values
    double c = 1.0;
    for (int i = 1; i <= n; ++i)
        c *= static_cast<double>(w + i - 1) / static_cast<double>(i);
    return c;
}

}  // namespace

void enumerate_configs(const EnsembleSpec& spec, long long win_lo,
                       long long win_hi,
                       const std::function<void(const ParticleConfig&, double)>& visit) {
    if (spec.n > 6)
        throw std::invalid_argument("enumerate_configs: n <= 6 required");
    if (win_hi < win_lo)
        throw std::invalid_argument("enumerate_configs: empty window");
    long long w = win_hi - win_lo + 1;
    if (binom_count(w, spec.n) > 1e7)
        throw std::runtime_error("enumerate_configs: state count above 1e7 cap");

    const int n = spec.n;
    const double theta = spec.theta;
    const double dn = static_cast<double>(n);
    const size_t wsz = static_cast<size_t>(w);

    // single-particle potential terms, per particle index (lattice shift)
    std::vector<std::vector<double>> pv(static_cast<size_t>(n),
                                        std::vector<double>(wsz));
    for (int i = 0; i < n; ++i) {
        double shift = static_cast<double>(n - 1 - i) * theta;
        for (size_t k = 0; k < wsz; ++k) {
            double l = static_cast<double>(win_lo + static_cast<long long>(k)) + shift;
            pv[static_cast<size_t>(i)][k] = -theta * dn * spec.potential(l / dn);
        }
    }
    // log Q_theta(d + k*theta) tables, k = index gap, d = lambda gap
    std::vector<std::vector<double>> lq(static_cast<size_t>(n));
    for (int k = 1; k < n; ++k) {
        lq[static_cast<size_t>(k)].resize(wsz);
        for (size_t d = 0; d < wsz; ++d)
            lq[static_cast<size_t>(k)][d] =
                log_q_theta(static_cast<double>(d) + static_cast<double>(k) * theta,
                            theta);
    }

    ParticleConfig cfg;
    cfg.n = n;
    cfg.theta = theta;
    cfg.lower = spec.lower;
    cfg.upper = spec.upper;
    cfg.lambda.assign(static_cast<size_t>(n), 0);

    // depth-first over lambda_1 >= lambda_2 >= ... within the window
    std::vector<double> partial(static_cast<size_t>(n) + 1, 0.0);
    std::function<void(int, long long)> rec = [&](int j, long long hi) {
        for (long long lam = hi; lam >= win_lo; --lam) {
            cfg.lambda[static_cast<size_t>(j)] = lam;
            double add = pv[static_cast<size_t>(j)][static_cast<size_t>(lam - win_lo)];
            for (int i = 0; i < j; ++i)
                add += lq[static_cast<size_t>(j - i)]
                         [static_cast<size_t>(cfg.lambda[static_cast<size_t>(i)] - lam)];
            partial[static_cast<size_t>(j) + 1] = partial[static_cast<size_t>(j)] + add;
            if (j + 1 == n)
                visit(cfg, partial[static_cast<size_t>(n)]);
            else
                rec(j + 1, lam);
        }
    };
    rec(0, win_hi);
}

namespace {

double log_add(double a, double b) {
    if (a == kMinusInf) return b;
    if (b == kMinusInf) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// Comparison-series machinery for the truncation tail. Using the sandwich
// bound and |a - b| <= sqrt(1+a^2) sqrt(1+b^2), each pair factor satisfies
//   Q_theta(l_i - l_j) <= e^{(1+theta)^3/theta} (1+l_i^2)^theta (1+l_j^2)^theta,
// so the weight is dominated by a product of single-particle factors
//   g(l) = (1+l^2)^{(N-1) theta} e^{-theta N V(l/N)}
// times a constant. The growth condition makes sum g summable.
struct TailSeries {
    const EnsembleSpec& spec;

    double g_log(long long lam) const {
        const int n = spec.n;
        const double theta = spec.theta;
        const double dn = static_cast<double>(n);
        double best = kMinusInf;
        for (int i = 0; i < n; ++i) {
            double l = static_cast<double>(lam) +
                       static_cast<double>(n - 1 - i) * theta;
            double v = static_cast<double>(n - 1) * theta * std::log1p(l * l) -
                       theta * dn * spec.potential(l / dn);
            best = std::max(best, v);
        }
        return best;
    }

    // log sum of g over lam = start, start+dir, ... with geometric closure;
    // +inf when the decay cannot be certified within the iteration budget.
    double extend_log(long long start, long long dir) const {
        double acc = kMinusInf;
        double prev = kMinusInf;
        int stable = 0;
        long long m = start;
        for (long long k = 0; k < 4000; ++k, m += dir) {
            double t = g_log(m);
            acc = log_add(acc, t);
            if (prev != kMinusInf) {
                double r = std::exp(t - prev);
                if (r < 0.95)
                    ++stable;
                else
                    stable = 0;
                if (stable >= 20)
                    return log_add(acc, t + std::log(r / (1.0 - r)));
            }
            prev = t;
        }
        return kPlusInf;
    }
};

// Upper bound (log scale) on the weight sum of configurations with at
// least one coordinate outside [win_lo, win_hi].
double truncation_tail_log(const EnsembleSpec& spec, long long win_lo,
                           long long win_hi) {
    TailSeries ts{spec};
    const int n = spec.n;
    const double theta = spec.theta;

    double s_win = kMinusInf;
    for (long long lam = win_lo; lam <= win_hi; ++lam)
        s_win = log_add(s_win, ts.g_log(lam));

    double t_hi = spec.upper ? kMinusInf : ts.extend_log(win_hi + 1, +1);
    double t_lo = spec.lower ? kMinusInf : ts.extend_log(win_lo - 1, -1);
    if (t_hi == kMinusInf && t_lo == kMinusInf) return kMinusInf;
    if (t_hi == kPlusInf || t_lo == kPlusInf) return kPlusInf;

    double s_tot = log_add(s_win, log_add(t_hi, t_lo));
    double pair_const = static_cast<double>(n * (n - 1) / 2) *
                        std::pow(1.0 + theta, 3) / theta;
    double outside = log_add(t_hi, t_lo);
    return pair_const + outside + static_cast<double>(n - 1) * s_tot;
}

}  // namespace

PartitionResult partition_exact(const EnsembleSpec& spec, long long win_lo,
                                long long win_hi) {
    if (spec.lower) win_lo = std::max(win_lo, *spec.lower);
    if (spec.upper) win_hi = std::min(win_hi, *spec.upper);
    std::vector<double> lw;
    enumerate_configs(spec, win_lo, win_hi,
                      [&](const ParticleConfig&, double w) { lw.push_back(w); });
    PartitionResult res;
    res.log_z = log_sum_exp(lw);
    double tail_log = truncation_tail_log(spec, win_lo, win_hi);
    res.tail_bound = (tail_log == kMinusInf) ? 0.0 : std::exp(tail_log);
    return res;
}

PartitionResult partition_auto(const EnsembleSpec& spec, double rel_tol) {
    long long lo = spec.lower.value_or(-32);
    long long hi = spec.upper.value_or(lo + 64);
    for (int attempt = 0; attempt < 8; ++attempt) {
        PartitionResult r = partition_exact(spec, lo, hi);
        if (std::isfinite(r.tail_bound) &&
            r.tail_bound <= rel_tol * std::exp(r.log_z))
            return r;
        if (!spec.upper) hi += (hi - lo);
        if (!spec.lower) lo -= (hi - lo) / 2;
        if (spec.lower && spec.upper) return r;  // finite lattice, nothing to extend
    }
    throw std::runtime_error("partition_auto: tail tolerance not reached");
}

WellposednessResult wellposedness_check(const EnsembleSpec& spec) {
    WellposednessResult res;
    if (spec.lower && spec.upper) {
        res.ok = true;
        res.witnessed_floor = 0.0;
        res.message = "finite lattice; partition function is a finite sum";
        return res;
    }
    const auto& cert = spec.potential.growth();
    if (!cert) {
        res.message = "unbounded lattice but potential carries no growth certificate";
        return res;
    }
    if (!(cert->theta_prime > 0.5)) {
        res.message = "growth certificate has theta_prime <= 1/2";
        return res;
    }
    double coef = cert->theta_prime +
                  static_cast<double>(spec.n - 1) * spec.theta;
    double floor = kPlusInf;
    double worst_x = 0.0;
    auto probe = [&](double x) {
        double g = static_cast<double>(spec.n) * spec.theta * spec.potential(x) -
                   coef * std::log1p(x * x);
        if (g < floor) {
            floor = g;
            worst_x = x;
        }
    };
    probe(0.0);
    for (double e = -3.0; e <= 6.0; e += 0.05) {
        double x = std::pow(10.0, e);
        probe(x);
        probe(-x);
    }
    res.witnessed_floor = floor;
    double claimed = cert->floor_const;
    if (floor < claimed - 1e-6 * (1.0 + std::fabs(claimed))) {
        res.violating_x = worst_x;
        res.message = "growth inequality violated at x = " + std::to_string(worst_x);
        return res;
    }
    res.ok = true;
    return res;
}

McmcSampler::McmcSampler(const EnsembleSpec& spec, uint64_t seed)
    : McmcSampler(spec, seed, packed_config(spec)) {}

McmcSampler::McmcSampler(const EnsembleSpec& spec, uint64_t seed,
                         ParticleConfig initial)
    : spec_(spec), state_(std::move(initial)), rng_(seed) {
    state_.lower = spec.lower;
    state_.upper = spec.upper;
    if (!validate(state_))
        throw std::invalid_argument("McmcSampler: invalid initial configuration");
    logq_memo_.reserve(1 << 16);
}

double McmcSampler::logq_gap(long long d, int k) const {
    uint64_t key = (static_cast<uint64_t>(d) << 10) |
                   static_cast<uint64_t>(k);
    auto it = logq_memo_.find(key);
    if (it != logq_memo_.end()) return it->second;
    double v = log_q_theta(static_cast<double>(d) +
                               static_cast<double>(k) * spec_.theta,
                           spec_.theta);
    logq_memo_.emplace(key, v);
    return v;
}

double McmcSampler::delta_log_weight(int i, int s) const {
    const int n = spec_.n;
    const double theta = spec_.theta;
    const double dn = static_cast<double>(n);
    const auto& lam = state_.lambda;
    double d = 0.0;
    long long li = lam[static_cast<size_t>(i)];
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        int k = std::abs(j - i);
        long long gap = (j > i) ? li - lam[static_cast<size_t>(j)]
                                : lam[static_cast<size_t>(j)] - li;
        long long gap_new = (j > i) ? gap + s : gap - s;
        d += logq_gap(gap_new, k) - logq_gap(gap, k);
    }
    double shift = static_cast<double>(n - 1 - i) * theta;
    double l_old = (static_cast<double>(li) + shift) / dn;
    double l_new = (static_cast<double>(li + s) + shift) / dn;
    d += -theta * dn * (spec_.potential(l_new) - spec_.potential(l_old));
    return d;
}

bool McmcSampler::step() {
    ++proposals_;
    const int n = spec_.n;
    int i = static_cast<int>(rng_() % static_cast<uint64_t>(n));
    int s = (rng_() & 1) ? 1 : -1;
    auto& lam = state_.lambda;
    long long nv = lam[static_cast<size_t>(i)] + s;
    if (i > 0 && nv > lam[static_cast<size_t>(i - 1)]) return false;
    if (i + 1 < n && nv < lam[static_cast<size_t>(i + 1)]) return false;
    if (state_.lower && nv < *state_.lower) return false;
    if (state_.upper && nv > *state_.upper) return false;
    double d = delta_log_weight(i, s);
    if (d < 0.0) {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
        if (std::log(u) >= d) return false;
    }
    lam[static_cast<size_t>(i)] = nv;
    ++accepted_;
    return true;
}

void McmcSampler::run(long long steps) {
    for (long long k = 0; k < steps; ++k) step();
}

}  // namespace loggas
