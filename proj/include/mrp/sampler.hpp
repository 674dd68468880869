#pragma once

#include <cstdint>
#include <vector>

#include "mrp/ars.hpp"
#include "mrp/catalog.hpp"
#include "mrp/common.hpp"
#include "mrp/prior.hpp"
#include "mrp/rng.hpp"

namespace mrp {

// One Gibbs configuration: transition matrix, Weibull parameters, the latent
// state after the censored tail (-1 when the tail is empty) and the current
// fictitious quantiles of never-observed transitions (NaN elsewhere).
struct ChainState {
    Grid<double> p;
    Grid<double> alpha;
    Grid<double> theta;
    int j_next = -1;
    Grid<double> tq_fict;
};

struct GibbsConfig {
    int n_iter = 20000;
    int n_burnin = 5000;
    int thin = 5;
    int n_chains = 4;
    std::uint64_t seed = 0;
    int ars_init_points = 5;
    int max_rejections = 1000;

    // test plumbing: freeze selected blocks of the sweep
    struct Updates {
        bool p = true;
        bool alpha = true;
        bool theta = true;
        bool latent = true;
        bool tq = true;
    } update;

    int draws_per_chain() const { return (n_iter - n_burnin) / thin; }
    void validate() const;
};

struct ModelPriors {
    Grid<TransitionPrior> transition;
    DirichletPrior dirichlet;

    void validate(int n_states) const;
};

struct ChainOutput {
    std::vector<ChainState> draws;  // chain-major, thinned, post burn-in
    int n_states = 0;
    GibbsConfig config;
    std::uint64_t prior_digest = 0;
    std::uint64_t data_digest = 0;
    int tq_fallback_count = 0;  // truncated-quantile draws that fell back to uniform

    int n_draws() const { return static_cast<int>(draws.size()); }
};

// Visit counts augmented by the latent transition (j_tau, j_next).
Grid<int> augmented_counts(const TransitionStats& stats, int j_next);

// Prop-style full conditionals. `tq_eff` is the prior quantile t_q for
// transitions seen historically and the current fictitious draw otherwise.

Grid<double> sample_p_rows(const TransitionStats& stats, int j_next, const DirichletPrior& prior,
                           Rng& rng);

struct GammaParams {
    double shape = 0.0;
    double log_rate = 0.0;
};

// Gamma law of theta^-alpha given everything else: shape m + N,
// rate b(alpha) + sum x^alpha (+ u^alpha when the censor is assigned here).
GammaParams theta_conditional_params(double alpha, const TransitionStats& stats, int i, int j,
                                     int j_next, const TransitionPrior& prior, double tq_eff);

double sample_theta(double alpha, const TransitionStats& stats, int i, int j, int j_next,
                    const TransitionPrior& prior, double tq_eff, Rng& rng);

// Log full conditional of alpha (up to a constant) and its derivative.
ArsEval alpha_conditional_eval(double alpha, const TransitionStats& stats, int i, int j,
                               int j_next, const TransitionPrior& prior, double tq_eff,
                               double theta);

double log_alpha_full_conditional(double alpha, const TransitionStats& stats, int i, int j,
                                  int j_next, const TransitionPrior& prior, double tq_eff,
                                  double theta);

double sample_alpha(const TransitionStats& stats, int i, int j, int j_next,
                    const TransitionPrior& prior, double tq_eff, double theta,
                    const GibbsConfig& config, Rng& rng);

// Latent state beyond the censored tail: weights p[j_tau][j] * survival(u_T).
int sample_latent_next_state(const Grid<double>& p, const Grid<double>& alpha,
                             const Grid<double>& theta, int j_tau, double censored, Rng& rng);

// Fictitious quantile for an m = 0 transition: Weibull(alpha + 1, theta)
// truncated to t_range, by inverse CDF; degenerate truncation falls back to
// a uniform draw and bumps *fallback_count.
double sample_fictitious_tq(double alpha, double theta, std::pair<double, double> t_range,
                            Rng& rng, int* fallback_count = nullptr);

// One chain's sweep machinery; run_gibbs drives n_chains of these.
class GibbsSampler {
public:
    GibbsSampler(const TransitionStats& stats, const ModelPriors& priors,
                 const GibbsConfig& config);

    void init_state(Rng& rng);
    const ChainState& state() const { return state_; }
    void set_state(const ChainState& s) { state_ = s; }

    void sweep(Rng& rng, int iteration);

    int tq_fallback_count() const { return tq_fallbacks_; }

private:
    double effective_tq(int i, int j) const;

    const TransitionStats& stats_;
    const ModelPriors& priors_;
    GibbsConfig config_;
    ChainState state_;
    int tq_fallbacks_ = 0;
};

ChainOutput run_gibbs(const TransitionStats& stats, const ModelPriors& priors,
                      const GibbsConfig& config, int jobs = 1);

}  // namespace mrp
