#include "loggas/config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "loggas/kernels.hpp"

namespace loggas {

bool validate(const ParticleConfig& cfg) {
    if (cfg.n < 1 || static_cast<int>(cfg.lambda.size()) != cfg.n) return false;
    if (!(cfg.theta > 0.0)) return false;
    if (cfg.lower && cfg.upper && *cfg.lower > *cfg.upper) return false;
    for (int i = 0; i + 1 < cfg.n; ++i)
        if (cfg.lambda[i] < cfg.lambda[i + 1]) return false;
    if (cfg.upper && cfg.lambda.front() > *cfg.upper) return false;
    if (cfg.lower && cfg.lambda.back() < *cfg.lower) return false;
    return true;
}

std::vector<double> positions(const ParticleConfig& cfg) {
    if (!validate(cfg)) throw std::invalid_argument("positions: invalid config");
    std::vector<double> l(cfg.n);
    for (int i = 0; i < cfg.n; ++i)
        l[i] = static_cast<double>(cfg.lambda[i]) +
               static_cast<double>(cfg.n - 1 - i) * cfg.theta;
    return l;
}

AtomicMeasure empirical_measure(const ParticleConfig& cfg) {
    auto l = positions(cfg);
    AtomicMeasure mu;
    mu.atoms.reserve(l.size());
    double mass = 1.0 / static_cast<double>(cfg.n);
    for (double li : l) mu.atoms.emplace_back(li / static_cast<double>(cfg.n), mass);
    return mu;
}

ParticleConfig quantile_config(const GridMeasure& density, int n, double theta) {
    if (n < 1) throw std::invalid_argument("quantile_config: n >= 1 required");
    if (!density.cap() || *density.cap() > 1.0 / theta * (1.0 + 1e-9))
        throw std::invalid_argument("quantile_config: density must be capped at 1/theta");
    ParticleConfig cfg;
    cfg.n = n;
    cfg.theta = theta;
    cfg.lambda.resize(n);
    double dn = static_cast<double>(n);
    for (int i = 1; i <= n; ++i) {
        double y = density.quantile((static_cast<double>(i) - 0.5) / dn);
        // l_{n-i+1} = largest point of Z + (i-1)*theta below n*y_i
        double shift = static_cast<double>(i - 1) * theta;
        double v = dn * y - shift;
        double lam = std::floor(v + 1e-12 * std::max(1.0, std::fabs(v)));
        cfg.lambda[static_cast<size_t>(n - i)] = static_cast<long long>(lam);
    }
    if (!validate(cfg))
        throw std::logic_error("quantile_config: produced invalid configuration");
    return cfg;
}

double log_weight(const ParticleConfig& cfg, const Potential& v) {
    auto l = positions(cfg);
    double dn = static_cast<double>(cfg.n);
    KahanSum s;
    for (int i = 0; i < cfg.n; ++i) {
        for (int j = i + 1; j < cfg.n; ++j) s.add(log_q_theta(l[i] - l[j], cfg.theta));
        s.add(-cfg.theta * dn * v(l[i] / dn));
    }
    return s.value();
}

double discrete_energy(const ParticleConfig& cfg, const Potential& v) {
    auto l = positions(cfg);
    double dn = static_cast<double>(cfg.n);
    KahanSum s;
    for (int i = 0; i < cfg.n; ++i)
        for (int j = i + 1; j < cfg.n; ++j)
            s.add(2.0 * kernel_kv(l[i] / dn, l[j] / dn, v));
    return s.value() / (dn * dn);
}

std::string to_line(const ParticleConfig& cfg) {
    std::ostringstream os;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", cfg.theta);
    os << cfg.n << ' ' << buf << ' ';
    if (cfg.lower)
        os << *cfg.lower;
    else
        os << "-inf";
    os << ' ';
    if (cfg.upper)
        os << *cfg.upper;
    else
        os << "inf";
    os << " :";
    for (long long lam : cfg.lambda) os << ' ' << lam;
    return os.str();
}

ParticleConfig config_from_line(const std::string& line) {
    std::istringstream is(line);
    ParticleConfig cfg;
    std::string a, b, colon;
    if (!(is >> cfg.n >> cfg.theta >> a >> b >> colon) || colon != ":")
        throw std::runtime_error("config_from_line: malformed line");
    if (a != "-inf") cfg.lower = std::stoll(a);
    if (b != "inf") cfg.upper = std::stoll(b);
    long long lam;
    while (is >> lam) cfg.lambda.push_back(lam);
    if (static_cast<int>(cfg.lambda.size()) != cfg.n)
        throw std::runtime_error("config_from_line: wrong particle count");
    return cfg;
}

}  // namespace loggas
