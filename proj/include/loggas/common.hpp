#ifndef LOGGAS_COMMON_HPP
#define LOGGAS_COMMON_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace loggas {

// Extended-real +infinity used as the diagonal / off-class sentinel.
inline constexpr double kPlusInf = std::numeric_limits<double>::infinity();
inline constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }

// Compensated (Kahan) accumulator so pairwise double sums are
// reduction-order stable to ~1e-12.
class KahanSum {
public:
    void add(double v) {
        if (std::isinf(v)) { inf_ = true; return; }
        double y = v - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return inf_ ? kPlusInf : s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
    bool inf_ = false;
};

inline double log_sum_exp(const std::vector<double>& xs) {
    if (xs.empty()) return kMinusInf;
    double m = kMinusInf;
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    KahanSum s;
    for (double x : xs) s.add(std::exp(x - m));
    return m + std::log(s.value());
}

}  // namespace loggas

#endif
