#include "loggas/measure.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace loggas {

double AtomicMeasure::total_mass() const {
    KahanSum s;
    for (const auto& a : atoms) s.add(a.second);
    return s.value();
}

double SphereMeasure::total_mass() const {
    KahanSum s;
    for (const auto& a : atoms) s.add(a.mass);
    s.add(mass_at_np);
    return s.value();
}

GridMeasure::GridMeasure(double left, double h, std::vector<double> weights,
                         std::optional<double> cap)
    : left_(left), h_(h), weights_(std::move(weights)), cap_(cap) {
    if (!(h_ > 0.0)) throw std::invalid_argument("GridMeasure: h must be > 0");
    if (weights_.empty()) throw std::invalid_argument("GridMeasure: no cells");
    KahanSum s;
    for (double w : weights_) {
        if (w < -1e-14) throw std::invalid_argument("GridMeasure: negative weight");
        if (cap_ && w > h_ * (*cap_) * (1.0 + 1e-12))
            throw std::invalid_argument("GridMeasure: density cap violated");
        s.add(w);
    }
    if (std::fabs(s.value() - 1.0) > 1e-8)
        throw std::invalid_argument("GridMeasure: weights must sum to 1");
    cum_.resize(weights_.size() + 1);
    cum_[0] = 0.0;
    for (size_t i = 0; i < weights_.size(); ++i) cum_[i + 1] = cum_[i] + weights_[i];
    cum_.back() = s.value();
}

double GridMeasure::cdf(double x) const {
    if (x <= left_) return 0.0;
    if (x >= right()) return cum_.back();
    double u = (x - left_) / h_;
    size_t i = static_cast<size_t>(u);
    if (i >= weights_.size()) i = weights_.size() - 1;
    return cum_[i] + (u - static_cast<double>(i)) * weights_[i];
}

double GridMeasure::quantile(double q) const {
    q = std::min(std::max(q, 0.0), cum_.back());
    // smallest k with cum_[k] >= q; the crossing lies in cell k-1
    auto it = std::lower_bound(cum_.begin(), cum_.end(), q);
    size_t k = static_cast<size_t>(it - cum_.begin());
    if (k == 0) return left_;
    size_t c = k - 1;
    return left_ + (static_cast<double>(c) + (q - cum_[c]) / weights_[c]) * h_;
}

void GridMeasure::write_csv(std::ostream& os) const {
    os << "left,h,cap\n";
    char buf[96];
    if (cap_)
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", left_, h_, *cap_);
    else
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,\n", left_, h_);
    os << buf;
    for (double w : weights_) {
        std::snprintf(buf, sizeof buf, "%.17g\n", w);
        os << buf;
    }
}

GridMeasure GridMeasure::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("left,h,cap", 0) != 0)
        throw std::runtime_error("GridMeasure CSV: bad header");
    if (!std::getline(is, line))
        throw std::runtime_error("GridMeasure CSV: missing values line");
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream vs(line);
    double left, h;
    if (!(vs >> left >> h)) throw std::runtime_error("GridMeasure CSV: bad values");
    std::optional<double> cap;
    double c;
    if (vs >> c) cap = c;
    std::vector<double> w;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        w.push_back(std::stod(line));
    }
    return GridMeasure(left, h, std::move(w), cap);
}

void GridMeasure::write_cdf_csv(std::ostream& os) const {
    os << "x,F\n";
    char buf[96];
    for (size_t i = 0; i <= weights_.size(); ++i) {
        double x = left_ + static_cast<double>(i) * h_;
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, cum_[i]);
        os << buf;
    }
}

GridMeasure grid_from_density(const std::function<double(double)>& f,
                              double left, double right, size_t cells,
                              std::optional<double> cap) {
    if (!(right > left) || cells == 0)
        throw std::invalid_argument("grid_from_density: bad window");
    double h = (right - left) / static_cast<double>(cells);
    std::vector<double> w(cells);
    KahanSum s;
    for (size_t i = 0; i < cells; ++i) {
        double x = left + (static_cast<double>(i) + 0.5) * h;
        double d = f(x);
        if (d < 0.0) throw std::invalid_argument("grid_from_density: negative density");
        w[i] = d * h;
        s.add(w[i]);
    }
    double total = s.value();
    if (!(total > 0.0)) throw std::invalid_argument("grid_from_density: zero mass");
    for (double& wi : w) wi /= total;
    if (cap) {
        for (double wi : w)
            if (wi > h * (*cap) * (1.0 + 1e-10))
                throw std::invalid_argument("grid_from_density: cap violated");
    }
    return GridMeasure(left, h, std::move(w), cap);
}

double energy(const GridMeasure& mu, const Potential& v) {
    const auto& w = mu.weights();
    size_t m = w.size();
    double h = mu.h();
    std::vector<double> x(m);
    for (size_t i = 0; i < m; ++i) x[i] = mu.midpoint(i);
    KahanSum s;
    double diag = 1.5 - std::log(h);
    for (size_t a = 0; a < m; ++a) {
        if (w[a] == 0.0) continue;
        double va = v(x[a]);
        if (va == kPlusInf) return kPlusInf;
        s.add(w[a] * va);
        s.add(w[a] * w[a] * diag);
        for (size_t b = a + 1; b < m; ++b) {
            if (w[b] == 0.0) continue;
            s.add(-2.0 * w[a] * w[b] * std::log(x[b] - x[a]));
        }
    }
    return s.value();
}

SphereMeasure pushforward(const GridMeasure& mu) {
    SphereMeasure nu;
    nu.atoms.reserve(mu.cells());
    for (size_t i = 0; i < mu.cells(); ++i) {
        double w = mu.weights()[i];
        if (w == 0.0) continue;
        double x = mu.midpoint(i);
        SphereAtom a;
        a.p = stereo(x);
        a.mass = w;
        a.self_width = mu.h() / (1.0 + x * x);  // local arclength scale of T
        a.line_x = x;
        nu.atoms.push_back(a);
    }
    nu.mass_at_np = 0.0;
    return nu;
}

namespace {

double sphere_vee(const SphereAtom& a, const Potential& v) {
    return v(a.line_x) - std::log1p(a.line_x * a.line_x);
}

double sphere_log_dist_inv(const SphereAtom& a, const SphereAtom& b) {
    double dx = a.p.x1 - b.p.x1;
    double dy = a.p.x2 - b.p.x2;
    double d2 = dx * dx + dy * dy;
    if (d2 == 0.0) return kPlusInf;
    return -0.5 * std::log(d2);
}

// Diagonal / coincident-point pair term with the exact same-cell rule.
double sphere_pair_log_term(const SphereAtom& a, const SphereAtom& b) {
    double t = sphere_log_dist_inv(a, b);
    if (t != kPlusInf) return t;
    if (a.self_width > 0.0 && b.self_width > 0.0)
        return 1.5 - 0.5 * std::log(a.self_width * b.self_width);
    return kPlusInf;
}

}  // namespace

double energy_sphere(const SphereMeasure& nu, const Potential& v) {
    if (nu.mass_at_np > 0.0) return kPlusInf;
    const auto& at = nu.atoms;
    KahanSum s;
    for (size_t a = 0; a < at.size(); ++a) {
        double ma = at[a].mass;
        if (ma == 0.0) continue;
        double vee = sphere_vee(at[a], v);
        if (vee == kPlusInf) return kPlusInf;
        s.add(ma * vee);
        double dterm = sphere_pair_log_term(at[a], at[a]);
        if (dterm == kPlusInf) return kPlusInf;
        s.add(ma * ma * dterm);
        for (size_t b = a + 1; b < at.size(); ++b) {
            if (at[b].mass == 0.0) continue;
            double t = sphere_pair_log_term(at[a], at[b]);
            if (t == kPlusInf) return kPlusInf;
            s.add(2.0 * ma * at[b].mass * t);
        }
    }
    return s.value();
}

double mixed_energy(const SphereMeasure& mu, const SphereMeasure& nu) {
    KahanSum s;
    for (const auto& a : mu.atoms) {
        if (a.mass == 0.0) continue;
        for (const auto& b : nu.atoms) {
            if (b.mass == 0.0) continue;
            double t = sphere_pair_log_term(a, b);
            if (t == kPlusInf) return kPlusInf;
            s.add(a.mass * b.mass * t);
        }
    }
    if (mu.mass_at_np > 0.0 && nu.mass_at_np > 0.0) return kPlusInf;
    return s.value();
}

double Cdf::value(double x) const {
    if (xs.empty()) return 0.0;
    if (x < xs.front()) return 0.0;
    if (x >= xs.back()) return f_right.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    size_t i = static_cast<size_t>(it - xs.begin()) - 1;
    if (x == xs[i]) return f_right[i];
    double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return f_right[i] + w * (f_left[i + 1] - f_right[i]);
}

double Cdf::value_left(double x) const {
    if (xs.empty()) return 0.0;
    if (x <= xs.front()) return 0.0;
    if (x > xs.back()) return f_right.back();
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it != xs.end() && *it == x)
        return f_left[static_cast<size_t>(it - xs.begin())];
    size_t i = static_cast<size_t>(it - xs.begin()) - 1;
    double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return f_right[i] + w * (f_left[i + 1] - f_right[i]);
}

Cdf Cdf::from(const GridMeasure& mu) {
    Cdf c;
    double acc = 0.0;
    c.xs.push_back(mu.left());
    c.f_left.push_back(0.0);
    c.f_right.push_back(0.0);
    for (size_t i = 0; i < mu.cells(); ++i) {
        acc += mu.weights()[i];
        c.xs.push_back(mu.left() + static_cast<double>(i + 1) * mu.h());
        c.f_left.push_back(acc);
        c.f_right.push_back(acc);
    }
    c.f_left.back() = c.f_right.back() = 1.0;
    return c;
}

Cdf Cdf::from(const AtomicMeasure& mu) {
    std::map<double, double> agg;
    for (const auto& a : mu.atoms) agg[a.first] += a.second;
    Cdf c;
    double acc = 0.0;
    for (const auto& [x, m] : agg) {
        c.xs.push_back(x);
        c.f_left.push_back(acc);
        acc += m;
        c.f_right.push_back(acc);
    }
    return c;
}

namespace {

// G(x) <= F(x + d) + d for all x?
bool envelope_ok(const Cdf& f, const Cdf& g, double d) {
    auto check = [&](double c) {
        if (g.value(c) > f.value(c + d) + d + 1e-15) return false;
        if (g.value_left(c) > f.value_left(c + d) + d + 1e-15) return false;
        return true;
    };
    for (double c : g.xs)
        if (!check(c)) return false;
    for (double c : f.xs)
        if (!check(c - d)) return false;
    return true;
}

}  // namespace

double levy_distance(const Cdf& f, const Cdf& g) {
    auto feasible = [&](double d) {
        return envelope_ok(f, g, d) && envelope_ok(g, f, d);
    };
    double lo = 0.0, hi = 1.0;
    if (feasible(0.0)) return 0.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (feasible(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double levy_distance(const GridMeasure& mu, const GridMeasure& nu) {
    return levy_distance(Cdf::from(mu), Cdf::from(nu));
}
double levy_distance(const AtomicMeasure& mu, const GridMeasure& nu) {
    return levy_distance(Cdf::from(mu), Cdf::from(nu));
}
double levy_distance(const AtomicMeasure& mu, const AtomicMeasure& nu) {
    return levy_distance(Cdf::from(mu), Cdf::from(nu));
}

GridMeasure truncate_measure(const GridMeasure& mu, double a, double b,
                             double eps) {
    if (!mu.cap())
        throw std::invalid_argument("truncate_measure: measure must be capped");
    if (!(eps > 0.0)) throw std::invalid_argument("truncate_measure: eps <= 0");
    double cap = *mu.cap();
    double h = mu.h();
    size_t m = mu.cells();
    std::vector<double> w(m, 0.0);
    double lost = 0.0;
    std::vector<size_t> slack;
    for (size_t i = 0; i < m; ++i) {
        double x = mu.midpoint(i);
        if (x >= a && x <= b)
            w[i] = mu.weights()[i];
        else
            lost += mu.weights()[i];
        if (mu.density(i) <= cap - eps) slack.push_back(i);
    }
    if (lost == 0.0) return mu;
    double slack_len = h * static_cast<double>(slack.size());
    if (slack_len < eps)
        throw std::runtime_error("truncate_measure: insufficient slack set");
    double add_density = lost / slack_len;
    if (add_density > eps * (1.0 + 1e-12))
        throw std::runtime_error("truncate_measure: slack headroom exceeded");
    for (size_t i : slack) w[i] += add_density * h;
    return GridMeasure(mu.left(), h, std::move(w), mu.cap());
}

}  // namespace loggas
