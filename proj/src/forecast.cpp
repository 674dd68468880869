#include "mrp/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "mrp/math.hpp"

namespace mrp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<Horizon> default_horizon_grid() {
    std::vector<Horizon> grid;
    for (int m = 1; m <= 6; ++m)
        grid.push_back({std::to_string(m) + (m == 1 ? " month" : " months"), m * kDaysPerMonth});
    for (int y = 1; y <= 4; ++y)
        grid.push_back({std::to_string(y) + (y == 1 ? " year" : " years"), y * kDaysPerYear});
    return grid;
}

void CspQuery::validate(int n_states) const {
    require(state >= 0 && state < n_states, "csp query: state out of range");
    require(elapsed >= 0.0, "csp query: elapsed time must be non-negative");
    for (size_t k = 0; k < dx.size(); ++k) {
        require(dx[k] >= 0.0, "csp query: horizons must be non-negative");
        if (k > 0) require(dx[k] >= dx[k - 1], "csp query: horizons must be ascending");
    }
}

std::vector<double> csp(const Grid<double>& p, const Grid<double>& alpha,
                        const Grid<double>& theta, int i, double t0, double dx) {
    require(t0 >= 0.0 && dx >= 0.0, "csp: negative time argument");
    const int s = p.size();
    std::vector<double> log_weight(s);  // log p_ih + log survival at t0
    for (int h = 0; h < s; ++h)
        log_weight[h] = p(i, h) > 0.0
                            ? std::log(p(i, h)) + weibull_log_survival(t0, alpha(i, h), theta(i, h))
                            : -kInf;
    const double log_z = log_sum_exp(log_weight);
    if (!std::isfinite(log_z)) fail("csp: elapsed time incompatible with parameters");

    std::vector<double> out(s, 0.0);
    for (int j = 0; j < s; ++j) {
        if (!(log_weight[j] > -kInf)) continue;
        const double ls0 = weibull_log_survival(t0, alpha(i, j), theta(i, j));
        const double ls1 = weibull_log_survival(t0 + dx, alpha(i, j), theta(i, j));
        // S(t0) - S(t0+dx) = S(t0) * (-expm1(ls1 - ls0))
        out[j] = std::exp(log_weight[j] - log_z) * (-std::expm1(ls1 - ls0));
    }
    return out;
}

CspResult csp_posterior(const ChainOutput& output, const CspQuery& query, double level) {
    query.validate(output.n_states);
    require(!output.draws.empty(), "csp posterior needs a nonempty chain");
    const int s = output.n_states;
    const size_t n_dx = query.dx.size();
    const size_t n_draws = output.draws.size();

    // values[j][k] over draws
    std::vector<std::vector<std::vector<double>>> values(
        s, std::vector<std::vector<double>>(n_dx, std::vector<double>(n_draws)));
    for (size_t d = 0; d < n_draws; ++d) {
        const ChainState& st = output.draws[d];
        for (size_t k = 0; k < n_dx; ++k) {
            const auto probs = csp(st.p, st.alpha, st.theta, query.state, query.elapsed,
                                   query.dx[k]);
            for (int j = 0; j < s; ++j) values[j][k][d] = probs[j];
        }
    }

    CspResult result;
    result.query = query;
    result.level = level;
    result.cells.assign(s, std::vector<CspCell>(n_dx));
    for (int j = 0; j < s; ++j)
        for (size_t k = 0; k < n_dx; ++k) {
            auto& v = values[j][k];
            CspCell cell;
            for (double x : v) cell.mean += x;
            cell.mean /= static_cast<double>(n_draws);
            std::sort(v.begin(), v.end());
            cell.median = quantile_sorted(v, 0.5);
            cell.lo = quantile_sorted(v, (1.0 - level) / 2.0);
            cell.hi = quantile_sorted(v, (1.0 + level) / 2.0);
            result.cells[j][k] = cell;
        }
    return result;
}

std::vector<RatioCurve> csp_ratios(const ChainOutput& output, const CspQuery& query,
                                   RatioMode mode) {
    const int s = output.n_states;
    require(s >= 2, "csp ratios need at least two states");
    require(!output.draws.empty(), "csp ratios need a nonempty chain");
    CspQuery q = query;
    q.state = 0;
    q.validate(s);
    const size_t n_dx = q.dx.size();
    constexpr double kDenFloor = 1e-300;

    std::vector<RatioCurve> curves;
    for (int fixed = 0; fixed < s; ++fixed)
        for (int a = 0; a < s; ++a)
            for (int b = a + 1; b < s; ++b) {
                RatioCurve c;
                c.fixed = fixed;
                c.num = a;
                c.den = b;
                c.values.assign(n_dx, 0.0);
                c.missing.assign(n_dx, 0);
                curves.push_back(std::move(c));
            }

    std::vector<std::vector<double>> sums(curves.size(), std::vector<double>(n_dx, 0.0));
    std::vector<std::vector<long>> counts(curves.size(), std::vector<long>(n_dx, 0));

    std::vector<std::vector<double>> probs(s);  // probs[i] = csp from source i
    for (const ChainState& st : output.draws) {
        for (size_t k = 0; k < n_dx; ++k) {
            for (int i = 0; i < s; ++i)
                probs[i] = csp(st.p, st.alpha, st.theta, i, query.elapsed, q.dx[k]);
            for (size_t ci = 0; ci < curves.size(); ++ci) {
                const RatioCurve& c = curves[ci];
                double num, den;
                if (mode == RatioMode::kSourceFixed) {
                    num = probs[c.fixed][c.num];
                    den = probs[c.fixed][c.den];
                } else {
                    num = probs[c.num][c.fixed];
                    den = probs[c.den][c.fixed];
                }
                if (den >= kDenFloor) {
                    sums[ci][k] += num / den;
                    ++counts[ci][k];
                }
            }
        }
    }
    for (size_t ci = 0; ci < curves.size(); ++ci)
        for (size_t k = 0; k < n_dx; ++k) {
            if (counts[ci][k] == 0) {
                curves[ci].missing[k] = 1;
                curves[ci].values[k] = std::numeric_limits<double>::quiet_NaN();
            } else {
                curves[ci].values[k] = sums[ci][k] / static_cast<double>(counts[ci][k]);
            }
        }
    return curves;
}

namespace {

BacktestDate run_backtest_date(const EventCatalog& catalog, const StateSpace& space,
                               double end_day, const BacktestOptions& options) {
    BacktestDate date;
    date.end_day = end_day;

    EventCatalog truncated;
    for (const auto& ev : catalog)
        if (ev.day <= end_day) truncated.push_back(ev);
    if (truncated.size() < 2) {
        date.skipped = true;
        date.skip_reason = "fewer than two events at or before the end date";
        return date;
    }

    FitResult fit;
    SequenceData seq;
    try {
        seq = build_sequence(truncated, space, end_day);
        ElicitOptions opts;
        opts.min_count = options.min_count;
        opts.q_target = options.q_target;
        opts.dirichlet_floor = options.dirichlet_floor;
        fit = fit_model(seq, opts, options.gibbs, 1);
    } catch (const Error& e) {
        date.skipped = true;
        date.skip_reason = e.what();
        return date;
    }

    date.prev_state = seq.states.back();
    date.waiting_days = seq.censored;
    date.cut_index = fit.elicitation.split.cut_index;

    // first event strictly after the end date, if any
    for (const auto& ev : catalog)
        if (ev.day > end_day) {
            date.realized_dx = ev.day - end_day;
            date.realized_state = classify_magnitude(ev.magnitude, space);
            break;
        }

    date.horizons = options.grid;
    if (date.realized_state >= 0) {
        Horizon realized{fmt_double(date.realized_dx) + " days", date.realized_dx};
        auto it = std::lower_bound(date.horizons.begin(), date.horizons.end(), realized.days,
                                   [](const Horizon& h, double d) { return h.days < d; });
        date.realized_horizon = static_cast<int>(it - date.horizons.begin());
        date.horizons.insert(it, realized);
    }

    const int source = date.prev_state;
    const double elapsed = date.waiting_days;
    const int s = space.n_states();
    const size_t n_h = date.horizons.size();
    date.csp_mean.assign(s, std::vector<double>(n_h, 0.0));
    std::vector<double> limit_mean(s, 0.0);
    for (const ChainState& st : fit.chains.draws) {
        for (size_t k = 0; k < n_h; ++k) {
            const auto probs = csp(st.p, st.alpha, st.theta, source, elapsed,
                                   date.horizons[k].days);
            for (int j = 0; j < s; ++j) date.csp_mean[j][k] += probs[j];
        }
        const auto lim = csp(st.p, st.alpha, st.theta, source, elapsed, kInf);
        for (int j = 0; j < s; ++j) limit_mean[j] += lim[j];
    }
    const double n_draws = static_cast<double>(fit.chains.draws.size());
    for (int j = 0; j < s; ++j) {
        for (size_t k = 0; k < n_h; ++k) date.csp_mean[j][k] /= n_draws;
        limit_mean[j] /= n_draws;
    }

    if (date.realized_state >= 0) {
        date.realized_csp = date.csp_mean[date.realized_state][date.realized_horizon];
        // probability-integral-transform value: predictive CDF of the delay
        // conditional on the realized type
        require(limit_mean[date.realized_state] > 0.0, "backtest: degenerate limit CSP");
        date.realized_pit = date.realized_csp / limit_mean[date.realized_state];
    }
    return date;
}

}  // namespace

BacktestResult backtest(const EventCatalog& catalog, const StateSpace& space,
                        const std::vector<double>& end_days, const BacktestOptions& options) {
    require(!catalog.empty(), "backtest: empty catalog");
    for (double d : end_days)
        require(d >= catalog.front().day, "backtest: end date precedes the catalog");

    BacktestResult result;
    result.dates.resize(end_days.size());

    const int workers = std::max(1, std::min<int>(options.jobs, static_cast<int>(end_days.size())));
    if (workers <= 1) {
        for (size_t k = 0; k < end_days.size(); ++k)
            result.dates[k] = run_backtest_date(catalog, space, end_days[k], options);
    } else {
        std::vector<std::exception_ptr> errors(end_days.size());
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (size_t k = w; k < end_days.size(); k += workers) {
                    try {
                        result.dates[k] = run_backtest_date(catalog, space, end_days[k], options);
                    } catch (...) {
                        errors[k] = std::current_exception();
                    }
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    return result;
}

}  // namespace mrp
