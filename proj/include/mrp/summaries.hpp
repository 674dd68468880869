#pragma once

#include <span>
#include <string>
#include <vector>

#include "mrp/catalog.hpp"
#include "mrp/common.hpp"
#include "mrp/rng.hpp"
#include "mrp/sampler.hpp"

namespace mrp {

struct ScalarSummary {
    double mean = 0.0;
    double sd = 0.0;
    double median = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double ess = 0.0;
};

struct SummaryEntry {
    std::string parameter;  // "p", "alpha", "theta"
    int from = 0;           // 0-based
    int to = 0;
    ScalarSummary stats;
};

struct PosteriorSummary {
    double level = 0.95;
    std::vector<SummaryEntry> entries;

    const ScalarSummary& get(const std::string& parameter, int from, int to) const;
};

// Effective sample size by the initial monotone sequence estimator; a
// constant series counts as fully independent.
double ess_initial_monotone(std::span<const double> series);

// Moments, quantiles and ESS per scalar coordinate of the chain output.
// ESS sums over chains; at least 10 retained draws are required.
PosteriorSummary chain_summary(const ChainOutput& output, double level = 0.95);

ScalarSummary summarize_series(std::span<const double> values, int n_chains, double level);

// One Weibull draw per retained iteration per transition.
Grid<std::vector<double>> predictive_draws(const ChainOutput& output, Rng& rng);

double mean_interoccurrence(double alpha, double theta);

struct TransitionPredictive {
    int from = 0;
    int to = 0;
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int n_observed = 0;
    int n_flagged = 0;
};

struct ObservationCheck {
    int from = 0;
    int to = 0;
    int index = 0;  // position within the transition's observations
    double observed = 0.0;
    double p_value = 0.0;
    bool flagged = false;
};

struct PredictiveReport {
    double level = 0.95;
    double flag_threshold = 0.025;
    std::vector<TransitionPredictive> transitions;
    std::vector<ObservationCheck> observations;
};

// Two-sided tail probability min(r, 1-r) with r the fraction of predictive
// draws at or below the observation; p < flag_threshold marks an outlier.
PredictiveReport bayes_p_values(const Grid<std::vector<double>>& observed,
                                const Grid<std::vector<double>>& predictive,
                                double level = 0.95, double flag_threshold = 0.025);

}  // namespace mrp
