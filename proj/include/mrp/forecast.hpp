#pragma once

#include <string>
#include <vector>

#include "mrp/catalog.hpp"
#include "mrp/common.hpp"
#include "mrp/fit.hpp"
#include "mrp/sampler.hpp"

namespace mrp {

struct Horizon {
    std::string label;
    double days = 0.0;
};

// Table layout used for forecasts: 1..6 months, 1..4 years.
// A month counts 30.44 days, a year 365.25.
constexpr double kDaysPerMonth = 30.44;
constexpr double kDaysPerYear = 365.25;
std::vector<Horizon> default_horizon_grid();

struct CspQuery {
    int state = 0;        // current state i (0-based)
    double elapsed = 0.0; // t0, days since the last event
    std::vector<double> dx;  // ascending horizons, +inf allowed

    void validate(int n_states) const;
};

// P(next event in state j within dx | last event in state i, t0 elapsed),
// for one parameter draw; survival functions evaluated in log space.
std::vector<double> csp(const Grid<double>& p, const Grid<double>& alpha,
                        const Grid<double>& theta, int i, double t0, double dx);

struct CspCell {
    double mean = 0.0;
    double median = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

struct CspResult {
    CspQuery query;
    double level = 0.9;
    std::vector<std::vector<CspCell>> cells;  // [destination][horizon]
};

CspResult csp_posterior(const ChainOutput& output, const CspQuery& query, double level = 0.9);

enum class RatioMode { kSourceFixed, kDestinationFixed };

// Posterior mean of a CSP ratio across the dx grid. Source-fixed curves are
// P(i->num)/P(i->den) (time-predictable diagnostic); destination-fixed are
// P(num->j)/P(den->j). Draws whose denominator falls below 1e-300 are
// dropped; a cell with no valid draw is reported missing.
struct RatioCurve {
    int fixed = 0;
    int num = 0;
    int den = 0;
    std::vector<double> values;
    std::vector<char> missing;
};

std::vector<RatioCurve> csp_ratios(const ChainOutput& output, const CspQuery& query,
                                   RatioMode mode);

struct BacktestOptions {
    int min_count = 2;
    double q_target = 0.5;
    double dirichlet_floor = 1.0;
    GibbsConfig gibbs;
    std::vector<Horizon> grid = default_horizon_grid();
    int jobs = 1;
};

struct BacktestDate {
    double end_day = 0.0;
    bool skipped = false;
    std::string skip_reason;

    int prev_state = -1;      // type of the last event before the end date
    double waiting_days = 0.0;  // elapsed time t0 at the end date
    int cut_index = 0;

    std::vector<Horizon> horizons;             // grid plus the realized delay
    std::vector<std::vector<double>> csp_mean;  // [destination][horizon]

    int realized_state = -1;   // next event after the end date, -1 if none
    double realized_dx = 0.0;  // its delay from the end date
    int realized_horizon = -1; // index into `horizons`
    double realized_csp = 0.0; // the boxed value of that cell
    double realized_pit = 0.0; // boxed value / limit CSP of the realized type
};

struct BacktestResult {
    std::vector<BacktestDate> dates;
};

// Truncate the catalog at each end date, re-split, re-elicit, re-fit and
// evaluate CSPs at the elapsed time since the last retained event. Dates run
// as independent jobs; a date whose fit is impossible is reported skipped.
BacktestResult backtest(const EventCatalog& catalog, const StateSpace& space,
                        const std::vector<double>& end_days, const BacktestOptions& options);

}  // namespace mrp
