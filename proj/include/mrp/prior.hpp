#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "mrp/common.hpp"

namespace mrp {

// Prior for one transition's Weibull (shape alpha, scale theta):
//   theta^-alpha | alpha ~ Gamma(m_eff, rate b(alpha))  with
//   b(alpha) = t_q^alpha / ((1-q)^(-1/m_eff) - 1),
//   alpha    ~ alpha^(m-1-c) (alpha-alpha0)^c exp{-m alpha (log t_q - mean_log)}
// on [alpha0, alpha1]. Transitions never seen historically (m = 0) borrow a
// single fictitious quantile drawn uniformly on t_range and behave as m = 1.
struct TransitionPrior {
    int m = 0;           // historical visit count
    double c = 1.0;
    double alpha0 = 2.0 / 3.0;
    double alpha1 = std::numeric_limits<double>::infinity();
    double q = 0.5;
    double t_q = 0.0;    // fixed prior quantile, meaningful when m >= 1
    std::pair<double, double> t_range{0.0, 0.0};  // fictitious-quantile support, m == 0
    double mean_log = 0.0;                        // (1/m) sum log x_-i, m >= 1

    int m_eff() const { return m > 0 ? m : 1; }
    bool bounded_above() const { return std::isfinite(alpha1); }
    // log t_q - mean_log; zero for m <= 1 where the exponential factor is absent
    double log_quantile_gap() const { return m > 1 ? std::log(t_q) - mean_log : 0.0; }
};

struct DirichletPrior {
    Grid<double> gamma;

    double row_total(int i) const {
        double c = 0.0;
        for (int j = 0; j < gamma.size(); ++j) c += gamma(i, j);
        return c;
    }
};

// Empirical quantile, linear interpolation between order statistics.
double estimate_quantile(std::span<const double> times, double q);

// b_q(alpha) = t_q^alpha [ (1-q)^(-1/m) - 1 ]^(-1), evaluated in log space.
double log_b_hat(double alpha, double t_q, double q, int m);
double b_hat(double alpha, double t_q, double q, int m);

struct ElicitOptions {
    int min_count = 3;
    double q_target = 0.5;
    double dirichlet_floor = 1.0;
};

// One transition's hyperparameters from its historical sojourn times;
// all_times (pooled historical sojourns) feeds the m = 0 fallback. The
// quantile order escalates by 0.05 (up to 0.95) until the prior is proper.
TransitionPrior elicit_transition_prior(std::span<const double> times, double q_target,
                                        std::span<const double> all_times,
                                        std::string* repair_note = nullptr);

DirichletPrior elicit_dirichlet_prior(const Grid<int>& counts, double floor = 1.0);

// log pi_3(alpha) up to a constant; -inf outside [alpha0, alpha1].
double log_prior_alpha(double alpha, const TransitionPrior& prior);
// d/dalpha of the above on the open support (used by the envelope sampler).
double log_prior_alpha_slope(double alpha, const TransitionPrior& prior);

}  // namespace mrp
