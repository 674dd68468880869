#pragma once

#include <span>
#include <vector>

namespace mrp {

// log(sum(exp(x))) with max subtraction; -inf entries are ignored,
// all -inf yields -inf.
double log_sum_exp(std::span<const double> log_terms);

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);

// Weibull with shape k and scale lambda, times on the natural scale.
// log survival = -(t / lambda)^k, evaluated as -exp(k log(t/lambda)) so a
// huge ratio degrades to -inf instead of overflowing.
double weibull_log_survival(double t, double shape, double scale);
double weibull_cdf(double t, double shape, double scale);
double weibull_mean(double shape, double scale);

// Empirical quantile with linear interpolation between order statistics
// (position (n-1)q + 1). `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace mrp
