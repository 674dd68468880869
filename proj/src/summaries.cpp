#include "mrp/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrp/math.hpp"

namespace mrp {

const ScalarSummary& PosteriorSummary::get(const std::string& parameter, int from, int to) const {
    for (const auto& e : entries)
        if (e.parameter == parameter && e.from == from && e.to == to) return e.stats;
    fail("summary: no entry for " + parameter + "(" + std::to_string(from + 1) + "," +
         std::to_string(to + 1) + ")");
}

double ess_initial_monotone(std::span<const double> series) {
    const size_t n = series.size();
    if (n < 2) return static_cast<double>(n);

    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);

    auto autocov = [&](size_t lag) {
        double acc = 0.0;
        for (size_t k = 0; k + lag < n; ++k)
            acc += (series[k] - mean) * (series[k + lag] - mean);
        return acc / static_cast<double>(n);
    };

    const double gamma0 = autocov(0);
    if (gamma0 <= 0.0) return static_cast<double>(n);  // constant chain

    // sum of paired autocovariances while positive, forced non-increasing
    double var = -gamma0;
    double prev_pair = std::numeric_limits<double>::infinity();
    for (size_t k = 0; 2 * k + 1 < n; ++k) {
        double pair = autocov(2 * k) + autocov(2 * k + 1);
        if (pair <= 0.0) break;
        pair = std::min(pair, prev_pair);
        prev_pair = pair;
        var += 2.0 * pair;
    }
    const double tau = std::max(var / gamma0, 1e-12);
    return std::clamp(static_cast<double>(n) / tau, 1.0, static_cast<double>(n));
}

ScalarSummary summarize_series(std::span<const double> values, int n_chains, double level) {
    require(!values.empty(), "summary of empty series");
    require(n_chains >= 1 && values.size() % n_chains == 0, "summary: chain layout mismatch");
    require(level > 0.0 && level < 1.0, "summary: level must be in (0,1)");

    const size_t n = values.size();
    ScalarSummary out;
    for (double v : values) out.mean += v;
    out.mean /= static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.sd = std::sqrt(ss / static_cast<double>(n - 1));
    }

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    out.median = quantile_sorted(sorted, 0.5);
    out.lo = quantile_sorted(sorted, (1.0 - level) / 2.0);
    out.hi = quantile_sorted(sorted, (1.0 + level) / 2.0);

    const size_t per_chain = n / static_cast<size_t>(n_chains);
    for (int c = 0; c < n_chains; ++c)
        out.ess += ess_initial_monotone(values.subspan(c * per_chain, per_chain));
    out.ess = std::min(out.ess, static_cast<double>(n));
    return out;
}

PosteriorSummary chain_summary(const ChainOutput& output, double level) {
    require(output.n_draws() >= 10, "summary needs at least 10 retained draws");
    const int s = output.n_states;

    PosteriorSummary summary;
    summary.level = level;
    std::vector<double> series(output.draws.size());
    const auto push = [&](const std::string& name, int i, int j, auto getter) {
        for (size_t d = 0; d < output.draws.size(); ++d) series[d] = getter(output.draws[d]);
        summary.entries.push_back({name, i, j, summarize_series(series, output.config.n_chains, level)});
    };
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            push("p", i, j, [&](const ChainState& st) { return st.p(i, j); });
            push("alpha", i, j, [&](const ChainState& st) { return st.alpha(i, j); });
            push("theta", i, j, [&](const ChainState& st) { return st.theta(i, j); });
        }
    return summary;
}

Grid<std::vector<double>> predictive_draws(const ChainOutput& output, Rng& rng) {
    const int s = output.n_states;
    require(s > 0 && !output.draws.empty(), "predictive draws need a nonempty chain");
    Grid<std::vector<double>> samples(s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) samples(i, j).reserve(output.draws.size());
    for (const ChainState& st : output.draws)
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j)
                samples(i, j).push_back(rng.weibull(st.alpha(i, j), st.theta(i, j)));
    return samples;
}

double mean_interoccurrence(double alpha, double theta) {
    require(alpha > 0.0 && theta > 0.0, "mean inter-occurrence needs positive parameters");
    return weibull_mean(alpha, theta);
}

PredictiveReport bayes_p_values(const Grid<std::vector<double>>& observed,
                                const Grid<std::vector<double>>& predictive,
                                double level, double flag_threshold) {
    require(observed.size() == predictive.size(), "p-values: dimension mismatch");
    const int s = observed.size();
    PredictiveReport report;
    report.level = level;
    report.flag_threshold = flag_threshold;

    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const auto& obs = observed(i, j);
            const auto& pred = predictive(i, j);
            if (obs.empty() && pred.empty()) continue;
            require(!pred.empty(), "p-values: empty predictive sample for an observed transition");

            std::vector<double> sorted(pred.begin(), pred.end());
            std::sort(sorted.begin(), sorted.end());

            TransitionPredictive tp;
            tp.from = i;
            tp.to = j;
            double acc = 0.0;
            for (double v : sorted) acc += v;
            tp.mean = acc / static_cast<double>(sorted.size());
            tp.lo = quantile_sorted(sorted, (1.0 - level) / 2.0);
            tp.hi = quantile_sorted(sorted, (1.0 + level) / 2.0);
            tp.n_observed = static_cast<int>(obs.size());

            for (size_t k = 0; k < obs.size(); ++k) {
                const auto at_or_below = std::upper_bound(sorted.begin(), sorted.end(), obs[k]) -
                                         sorted.begin();
                const double r =
                    static_cast<double>(at_or_below) / static_cast<double>(sorted.size());
                ObservationCheck check;
                check.from = i;
                check.to = j;
                check.index = static_cast<int>(k);
                check.observed = obs[k];
                check.p_value = std::min(r, 1.0 - r);
                check.flagged = check.p_value < flag_threshold;
                if (check.flagged) ++tp.n_flagged;
                report.observations.push_back(check);
            }
            report.transitions.push_back(tp);
        }
    return report;
}

}  // namespace mrp
