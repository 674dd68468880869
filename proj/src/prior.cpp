#include "mrp/prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrp/math.hpp"

namespace mrp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double estimate_quantile(std::span<const double> times, double q) {
    require(!times.empty(), "quantile estimate needs at least one observation");
    std::vector<double> sorted(times.begin(), times.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, q);
}

double log_b_hat(double alpha, double t_q, double q, int m) {
    require(alpha > 0.0, "b_hat: alpha must be positive");
    require(t_q > 0.0, "b_hat: t_q must be positive");
    require(m >= 1, "b_hat: m must be >= 1");
    require(q > 0.0 && q < 1.0, "b_hat: q must be in (0,1)");
    // (1-q)^(-1/m) - 1 = expm1(u), u = -log(1-q)/m
    const double u = -std::log1p(-q) / static_cast<double>(m);
    if (!std::isfinite(u)) fail("b_hat: quantile order too close to 1");
    const double log_mult = u > 36.0 ? u : std::log(std::expm1(u));
    return alpha * std::log(t_q) - log_mult;
}

double b_hat(double alpha, double t_q, double q, int m) {
    return std::exp(log_b_hat(alpha, t_q, q, m));
}

TransitionPrior elicit_transition_prior(std::span<const double> times, double q_target,
                                        std::span<const double> all_times,
                                        std::string* repair_note) {
    require(q_target > 0.0 && q_target < 1.0, "q_target must be in (0,1)");
    for (double x : times) require(x > 0.0, "historical sojourn times must be positive");

    TransitionPrior prior;
    prior.m = static_cast<int>(times.size());

    if (prior.m == 0) {
        require(!all_times.empty(), "no historical sojourn times for the fictitious quantile");
        auto [lo, hi] = std::minmax_element(all_times.begin(), all_times.end());
        prior.c = 1.0;
        prior.alpha0 = 2.0 / 3.0;
        prior.alpha1 = 10.0;
        prior.q = 0.5;
        prior.t_range = {*lo, *hi};
        return prior;
    }

    double sum_log = 0.0;
    for (double x : times) sum_log += std::log(x);
    prior.mean_log = sum_log / prior.m;

    if (prior.m == 1) {
        prior.c = 1.0;
        prior.alpha0 = 2.0 / 3.0;
        prior.alpha1 = 10.0;
        prior.q = 0.5;
        prior.t_q = times[0];
        return prior;
    }

    prior.c = static_cast<double>(prior.m - 1);
    prior.alpha0 = prior.m == 2 ? 2.0 / 3.0 : 2.0 / prior.m;
    prior.alpha1 = std::numeric_limits<double>::infinity();

    // propriety needs log t_q > mean_log; escalate q in 0.05 steps up to 0.95
    double q = q_target;
    for (;;) {
        const double tq = estimate_quantile(times, q);
        if (std::log(tq) > prior.mean_log) {
            if (repair_note && q != q_target)
                *repair_note = "q raised from " + fmt_double(q_target) + " to " + fmt_double(q);
            prior.q = q;
            prior.t_q = tq;
            return prior;
        }
        if (q >= 0.95)
            fail("prior for this transition is improper at every quantile order up to 0.95");
        q = std::min(q + 0.05, 0.95);
    }
}

DirichletPrior elicit_dirichlet_prior(const Grid<int>& counts, double floor) {
    require(floor > 0.0, "dirichlet floor must be positive");
    DirichletPrior prior;
    prior.gamma = Grid<double>(counts.size(), 0.0);
    for (int i = 0; i < counts.size(); ++i)
        for (int j = 0; j < counts.size(); ++j) {
            require(counts(i, j) >= 0, "transition counts must be non-negative");
            prior.gamma(i, j) = std::max(static_cast<double>(counts(i, j)), floor);
        }
    return prior;
}

double log_prior_alpha(double alpha, const TransitionPrior& prior) {
    if (alpha < prior.alpha0 || alpha > prior.alpha1) return kNegInf;
    const double m = prior.m_eff();
    const double shifted = alpha - prior.alpha0;
    if (shifted <= 0.0) return prior.c > 0.0 ? kNegInf : 0.0;
    return (m - 1.0 - prior.c) * std::log(alpha) + prior.c * std::log(shifted) -
           m * alpha * prior.log_quantile_gap();
}

double log_prior_alpha_slope(double alpha, const TransitionPrior& prior) {
    const double m = prior.m_eff();
    return (m - 1.0 - prior.c) / alpha + prior.c / (alpha - prior.alpha0) -
           m * prior.log_quantile_gap();
}

}  // namespace mrp
