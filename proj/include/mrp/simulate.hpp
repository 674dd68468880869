#pragma once

#include "mrp/catalog.hpp"
#include "mrp/common.hpp"
#include "mrp/rng.hpp"

namespace mrp {

// Generating parameters of a Markov renewal process with Weibull holding
// times: next state from the p row of the current state, holding time from
// the Weibull of that transition.
struct TrueModel {
    Grid<double> p;
    Grid<double> alpha;
    Grid<double> theta;
    int j0 = 0;

    int n_states() const { return p.size(); }
    void validate() const;
};

// Simulate over [0, T]; the time crossing T is dropped and becomes the
// censored tail, so sum(times) + censored == T.
SequenceData generate_mrp(const TrueModel& model, double horizon, Rng& rng);

// Constrained variants: holding-time law tied across each row (waiting time
// depends on the current state only) or each column (on the next state only).
// The tie is validated, not silently repaired.
SequenceData generate_tpm(const TrueModel& model, double horizon, Rng& rng);
SequenceData generate_spm(const TrueModel& model, double horizon, Rng& rng);

}  // namespace mrp
