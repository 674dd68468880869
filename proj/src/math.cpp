#include "mrp/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrp/common.hpp"

namespace mrp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_sum_exp(std::span<const double> log_terms) {
    double m = kNegInf;
    for (double v : log_terms) m = std::max(m, v);
    if (std::isinf(m) && m < 0) return kNegInf;
    double acc = 0.0;
    for (double v : log_terms) acc += std::exp(v - m);
    return m + std::log(acc);
}

double gamma_p(double a, double x) {
    require(a > 0.0 && x >= 0.0, "gamma_p: invalid arguments");
    if (x == 0.0) return 0.0;
    const double log_prefix = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        // series: sum x^n / ((a+1)...(a+n))
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < 1000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return std::exp(log_prefix + std::log(a * sum)) / a;
    }
    // continued fraction for Q(a, x), modified Lentz
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    const double q = std::exp(log_prefix) * h;
    return 1.0 - q;
}

double weibull_log_survival(double t, double shape, double scale) {
    require(shape > 0.0 && scale > 0.0, "weibull: shape and scale must be positive");
    if (t <= 0.0) return 0.0;
    return -std::exp(shape * (std::log(t) - std::log(scale)));
}

double weibull_cdf(double t, double shape, double scale) {
    return -std::expm1(weibull_log_survival(t, shape, scale));
}

double weibull_mean(double shape, double scale) {
    return scale * std::tgamma(1.0 + 1.0 / shape);
}

double quantile_sorted(std::span<const double> sorted, double q) {
    require(!sorted.empty(), "quantile of empty sample");
    require(q > 0.0 && q < 1.0, "quantile order must be in (0,1)");
    const size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = (static_cast<double>(n) - 1.0) * q;
    const size_t lo = static_cast<size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= n) return sorted[n - 1];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace mrp
