#include "mrp/simulate.hpp"

#include <cmath>
#include <limits>

namespace mrp {

void TrueModel::validate() const {
    const int s = p.size();
    require(s >= 1, "model: empty state space");
    require(alpha.size() == s && theta.size() == s, "model: dimension mismatch");
    require(j0 >= 0 && j0 < s, "model: initial state out of range");
    for (int i = 0; i < s; ++i) {
        double row = 0.0;
        for (int j = 0; j < s; ++j) {
            require(p(i, j) >= 0.0, "model: negative transition probability");
            require(alpha(i, j) > 0.0 && theta(i, j) > 0.0,
                    "model: shape and scale must be positive");
            row += p(i, j);
        }
        require(std::fabs(row - 1.0) <= 1e-9, "model: transition rows must sum to 1");
    }
}

SequenceData generate_mrp(const TrueModel& model, double horizon, Rng& rng) {
    model.validate();
    require(horizon > 0.0, "simulation horizon must be positive");
    const int s = model.n_states();

    SequenceData seq;
    seq.n_states = s;
    seq.horizon = horizon;
    seq.states.push_back(model.j0);

    std::vector<double> logw(s);
    double elapsed = 0.0;
    for (;;) {
        const int i = seq.states.back();
        for (int j = 0; j < s; ++j)
            logw[j] = model.p(i, j) > 0.0 ? std::log(model.p(i, j))
                                          : -std::numeric_limits<double>::infinity();
        const int next = rng.categorical_logw(logw);
        const double x = rng.weibull(model.alpha(i, next), model.theta(i, next));
        if (elapsed + x > horizon) {
            seq.censored = horizon - elapsed;
            break;
        }
        elapsed += x;
        seq.states.push_back(next);
        seq.times.push_back(x);
    }
    seq.validate();
    return seq;
}

namespace {

void require_row_tied(const TrueModel& model) {
    const int s = model.n_states();
    for (int i = 0; i < s; ++i)
        for (int j = 1; j < s; ++j)
            require(model.alpha(i, j) == model.alpha(i, 0) && model.theta(i, j) == model.theta(i, 0),
                    "time-predictable model: holding-time law must not depend on the next state");
}

void require_column_tied(const TrueModel& model) {
    const int s = model.n_states();
    for (int j = 0; j < s; ++j)
        for (int i = 1; i < s; ++i)
            require(model.alpha(i, j) == model.alpha(0, j) && model.theta(i, j) == model.theta(0, j),
                    "slip-predictable model: holding-time law must not depend on the current state");
}

}  // namespace

SequenceData generate_tpm(const TrueModel& model, double horizon, Rng& rng) {
    require_row_tied(model);
    return generate_mrp(model, horizon, rng);
}

SequenceData generate_spm(const TrueModel& model, double horizon, Rng& rng) {
    require_column_tied(model);
    return generate_mrp(model, horizon, rng);
}

}  // namespace mrp
