#include "mrp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "mrp/math.hpp"

namespace mrp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool censor_assigned(const TransitionStats& stats, int i, int j, int j_next) {
    return stats.censored > 0.0 && j_next >= 0 && stats.censor_state == i && j_next == j;
}
}  // namespace

void GibbsConfig::validate() const {
    require(n_burnin >= 0 && n_iter > n_burnin, "gibbs: need n_iter > n_burnin >= 0");
    require(thin >= 1, "gibbs: thin must be >= 1");
    require(n_chains >= 1, "gibbs: need at least one chain");
    require(ars_init_points >= 3, "gibbs: ars_init_points must be >= 3");
    require(max_rejections >= 1, "gibbs: max_rejections must be >= 1");
}

void ModelPriors::validate(int n_states) const {
    require(transition.size() == n_states, "priors: transition grid dimension mismatch");
    require(dirichlet.gamma.size() == n_states, "priors: dirichlet dimension mismatch");
    for (int i = 0; i < n_states; ++i)
        for (int j = 0; j < n_states; ++j) {
            const TransitionPrior& pr = transition(i, j);
            require(pr.alpha0 > 0.0 && pr.alpha0 < pr.alpha1, "priors: invalid alpha support");
            require(pr.q > 0.0 && pr.q < 1.0, "priors: invalid quantile order");
            if (pr.m >= 1) require(pr.t_q > 0.0, "priors: t_q must be positive");
            else require(pr.t_range.first > 0.0 && pr.t_range.second >= pr.t_range.first,
                         "priors: invalid fictitious-quantile range");
            require(dirichlet.gamma(i, j) > 0.0, "priors: dirichlet weights must be positive");
        }
}

Grid<int> augmented_counts(const TransitionStats& stats, int j_next) {
    Grid<int> counts = stats.count;
    if (stats.censored > 0.0 && j_next >= 0) ++counts(stats.censor_state, j_next);
    return counts;
}

Grid<double> sample_p_rows(const TransitionStats& stats, int j_next, const DirichletPrior& prior,
                           Rng& rng) {
    const int s = stats.n_states;
    const Grid<int> counts = augmented_counts(stats, j_next);
    Grid<double> p(s, 0.0);
    std::vector<double> conc(s), row(s);
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) conc[j] = prior.gamma(i, j) + counts(i, j);
        rng.dirichlet(conc, row);
        for (int j = 0; j < s; ++j) p(i, j) = row[j];
    }
    return p;
}

GammaParams theta_conditional_params(double alpha, const TransitionStats& stats, int i, int j,
                                     int j_next, const TransitionPrior& prior, double tq_eff) {
    const int n = stats.count(i, j);
    GammaParams out;
    out.shape = prior.m_eff() + n;
    // log(b(alpha) + sum_rho x_rho^alpha [+ u^alpha]) via log-sum-exp
    std::vector<double> terms;
    terms.reserve(n + 2);
    terms.push_back(log_b_hat(alpha, tq_eff, prior.q, prior.m_eff()));
    for (double x : stats.times(i, j)) terms.push_back(alpha * std::log(x));
    if (censor_assigned(stats, i, j, j_next)) terms.push_back(alpha * std::log(stats.censored));
    out.log_rate = log_sum_exp(terms);
    return out;
}

double sample_theta(double alpha, const TransitionStats& stats, int i, int j, int j_next,
                    const TransitionPrior& prior, double tq_eff, Rng& rng) {
    const GammaParams gp = theta_conditional_params(alpha, stats, i, j, j_next, prior, tq_eff);
    // theta^-alpha ~ Gamma(shape, rate), rate kept in log space
    const double g = rng.gamma(gp.shape);
    return std::exp(-(std::log(g) - gp.log_rate) / alpha);
}

ArsEval alpha_conditional_eval(double alpha, const TransitionStats& stats, int i, int j,
                               int j_next, const TransitionPrior& prior, double tq_eff,
                               double theta) {
    const double lp = log_prior_alpha(alpha, prior);
    if (!std::isfinite(lp)) return {kNegInf, kNegInf};

    const int n = stats.count(i, j);
    const int m = prior.m_eff();
    const double log_theta = std::log(theta);

    // linear term: sum log x + m log t_q - (m + N) log theta
    const double linear = stats.sum_log(i, j) + m * std::log(tq_eff) - (m + n) * log_theta;

    // R(alpha) = (b(alpha) + M(alpha)) / theta^alpha, term by term as
    // exp(alpha * log(x/theta) [+ const]); an overflowing term sends the
    // log density to -inf, which is where it belongs.
    const double log_kappa = log_b_hat(alpha, tq_eff, prior.q, m) - alpha * std::log(tq_eff);
    double r = 0.0, r_slope = 0.0;
    auto add_term = [&](double log_x, double log_coeff) {
        const double a = log_x - log_theta;
        const double e = std::exp(alpha * a + log_coeff);
        r += e;
        r_slope += a * e;
    };
    add_term(std::log(tq_eff), log_kappa);
    for (double x : stats.times(i, j)) add_term(std::log(x), 0.0);
    if (censor_assigned(stats, i, j, j_next)) add_term(std::log(stats.censored), 0.0);

    if (!std::isfinite(r)) return {kNegInf, kNegInf};

    ArsEval out;
    out.value = lp + alpha * linear + (n + 1) * std::log(alpha) - r;
    out.slope = log_prior_alpha_slope(alpha, prior) + linear + (n + 1) / alpha - r_slope;
    return out;
}

double log_alpha_full_conditional(double alpha, const TransitionStats& stats, int i, int j,
                                  int j_next, const TransitionPrior& prior, double tq_eff,
                                  double theta) {
    return alpha_conditional_eval(alpha, stats, i, j, j_next, prior, tq_eff, theta).value;
}

double sample_alpha(const TransitionStats& stats, int i, int j, int j_next,
                    const TransitionPrior& prior, double tq_eff, double theta,
                    const GibbsConfig& config, Rng& rng) {
    const auto target = [&](double a) {
        return alpha_conditional_eval(a, stats, i, j, j_next, prior, tq_eff, theta);
    };
    return ars_sample(target, prior.alpha0, prior.alpha1, config.ars_init_points,
                      config.max_rejections, rng);
}

int sample_latent_next_state(const Grid<double>& p, const Grid<double>& alpha,
                             const Grid<double>& theta, int j_tau, double censored, Rng& rng) {
    require(censored > 0.0, "latent state is only defined for a positive censored tail");
    const int s = p.size();
    std::vector<double> logw(s);
    for (int j = 0; j < s; ++j) {
        const double pj = p(j_tau, j);
        logw[j] = pj > 0.0
                      ? std::log(pj) + weibull_log_survival(censored, alpha(j_tau, j), theta(j_tau, j))
                      : kNegInf;
    }
    if (!std::isfinite(log_sum_exp(logw)))
        fail("censored time incompatible with parameters: all survival weights vanish");
    return rng.categorical_logw(logw);
}

double sample_fictitious_tq(double alpha, double theta, std::pair<double, double> t_range,
                            Rng& rng, int* fallback_count) {
    const auto [lo, hi] = t_range;
    require(lo > 0.0 && hi >= lo, "fictitious quantile: invalid range");
    const double shape = alpha + 1.0;
    const double a_lo = weibull_log_survival(lo, shape, theta);
    const double a_hi = weibull_log_survival(hi, shape, theta);
    const double gap = a_lo - a_hi;  // >= 0
    if (!std::isfinite(gap) || gap < 1e-14) {
        if (fallback_count) ++(*fallback_count);
        return rng.uniform(lo, hi);
    }
    const double u = rng.uniform01();
    // log survival of the draw, interpolated between the truncation points
    const double log_s = a_lo + std::log1p(u * std::expm1(a_hi - a_lo));
    const double t = theta * std::exp(std::log(-log_s) / shape);
    return std::clamp(t, lo, hi);
}

GibbsSampler::GibbsSampler(const TransitionStats& stats, const ModelPriors& priors,
                           const GibbsConfig& config)
    : stats_(stats), priors_(priors), config_(config) {
    config_.validate();
    priors_.validate(stats_.n_states);
}

double GibbsSampler::effective_tq(int i, int j) const {
    const TransitionPrior& pr = priors_.transition(i, j);
    return pr.m >= 1 ? pr.t_q : state_.tq_fict(i, j);
}

void GibbsSampler::init_state(Rng& rng) {
    const int s = stats_.n_states;
    state_.p = Grid<double>(s, 0.0);
    state_.alpha = Grid<double>(s, 0.0);
    state_.theta = Grid<double>(s, 0.0);
    state_.tq_fict = Grid<double>(s, kNaN);
    for (int i = 0; i < s; ++i) {
        const double total = priors_.dirichlet.row_total(i);
        for (int j = 0; j < s; ++j) {
            state_.p(i, j) = priors_.dirichlet.gamma(i, j) / total;
            const TransitionPrior& pr = priors_.transition(i, j);
            state_.alpha(i, j) = std::min(std::max(1.0, pr.alpha0 + 0.01), pr.alpha1);
            if (pr.m >= 1) {
                state_.theta(i, j) = pr.t_q;
            } else {
                state_.tq_fict(i, j) = 0.5 * (pr.t_range.first + pr.t_range.second);
                state_.theta(i, j) = state_.tq_fict(i, j);
            }
        }
    }
    state_.j_next = stats_.censored > 0.0 ? rng.uniform_int(s) : -1;
}

void GibbsSampler::sweep(Rng& rng, int iteration) {
    const int s = stats_.n_states;
    auto located = [&](const char* what, int i, int j) {
        return std::string(what) + " at sweep " + std::to_string(iteration) + ", transition (" +
               std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    };
    try {
        if (stats_.censored > 0.0 && config_.update.latent)
            state_.j_next = sample_latent_next_state(state_.p, state_.alpha, state_.theta,
                                                     stats_.censor_state, stats_.censored, rng);
    } catch (const Error& e) {
        fail(std::string(e.what()) + " [latent state, sweep " + std::to_string(iteration) + "]");
    }
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const TransitionPrior& pr = priors_.transition(i, j);
            if (pr.m == 0 && config_.update.tq) {
                state_.tq_fict(i, j) = sample_fictitious_tq(
                    state_.alpha(i, j), state_.theta(i, j), pr.t_range, rng, &tq_fallbacks_);
            }
        }
    if (config_.update.alpha) {
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) {
                try {
                    state_.alpha(i, j) =
                        sample_alpha(stats_, i, j, state_.j_next, priors_.transition(i, j),
                                     effective_tq(i, j), state_.theta(i, j), config_, rng);
                } catch (const Error& e) {
                    fail(std::string(e.what()) + " [" + located("shape update", i, j) + "]");
                }
            }
    }
    if (config_.update.theta) {
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) {
                try {
                    state_.theta(i, j) =
                        sample_theta(state_.alpha(i, j), stats_, i, j, state_.j_next,
                                     priors_.transition(i, j), effective_tq(i, j), rng);
                } catch (const Error& e) {
                    fail(std::string(e.what()) + " [" + located("scale update", i, j) + "]");
                }
            }
    }
    if (config_.update.p)
        state_.p = sample_p_rows(stats_, state_.j_next, priors_.dirichlet, rng);
}

namespace {

void run_one_chain(const TransitionStats& stats, const ModelPriors& priors,
                   const GibbsConfig& config, int chain_index, std::vector<ChainState>& draws,
                   int& fallbacks) {
    GibbsSampler sampler(stats, priors, config);
    Rng rng(Rng::derive_seed(config.seed, static_cast<std::uint64_t>(chain_index)));
    sampler.init_state(rng);
    draws.clear();
    draws.reserve(config.draws_per_chain());
    for (int iter = 1; iter <= config.n_iter; ++iter) {
        sampler.sweep(rng, iter);
        if (iter > config.n_burnin && (iter - config.n_burnin) % config.thin == 0)
            draws.push_back(sampler.state());
    }
    fallbacks = sampler.tq_fallback_count();
}

}  // namespace

ChainOutput run_gibbs(const TransitionStats& stats, const ModelPriors& priors,
                      const GibbsConfig& config, int jobs) {
    config.validate();
    priors.validate(stats.n_states);
    require(jobs >= 1, "gibbs: jobs must be >= 1");

    ChainOutput out;
    out.n_states = stats.n_states;
    out.config = config;

    std::vector<std::vector<ChainState>> per_chain(config.n_chains);
    std::vector<int> fallbacks(config.n_chains, 0);
    std::vector<std::exception_ptr> errors(config.n_chains);

    const int workers = std::min(jobs, config.n_chains);
    if (workers <= 1) {
        for (int k = 0; k < config.n_chains; ++k)
            run_one_chain(stats, priors, config, k, per_chain[k], fallbacks[k]);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int k = w; k < config.n_chains; k += workers) {
                    try {
                        run_one_chain(stats, priors, config, k, per_chain[k], fallbacks[k]);
                    } catch (...) {
                        errors[k] = std::current_exception();
                    }
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    for (int k = 0; k < config.n_chains; ++k) {
        out.tq_fallback_count += fallbacks[k];
        for (auto& d : per_chain[k]) out.draws.push_back(std::move(d));
    }
    return out;
}

}  // namespace mrp
