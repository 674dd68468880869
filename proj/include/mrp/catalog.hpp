#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mrp/common.hpp"

namespace mrp {

// One catalog row. `day` is a real-valued day stamp (fractional days allowed);
// calendar dates are converted to day counts at the IO boundary.
struct EventRecord {
    double day = 0.0;
    double magnitude = 0.0;
    std::string id;
};

using EventCatalog = std::vector<EventRecord>;

// Ascending magnitude cut points defining left-closed right-open classes;
// the last class is unbounded above. thresholds.size() == number of states.
class StateSpace {
public:
    explicit StateSpace(std::vector<double> thresholds);

    int n_states() const { return static_cast<int>(thresholds_.size()); }
    const std::vector<double>& thresholds() const { return thresholds_; }

private:
    std::vector<double> thresholds_;
};

// Observed path of the process: visited states (0-based, size tau+1),
// inter-occurrence times in days (size tau), and the right-censored tail.
struct SequenceData {
    std::vector<int> states;
    std::vector<double> times;
    double censored = 0.0;  // u_T, days from last event to the horizon
    double horizon = 0.0;   // T, days from the first event
    int n_states = 0;

    int n_transitions() const { return static_cast<int>(times.size()); }
    void validate() const;
};

// Per-transition sufficient statistics of a sequence.
struct TransitionStats {
    int n_states = 0;
    Grid<int> count;                       // N_ij
    Grid<std::vector<double>> times;       // x^rho_ij
    Grid<double> sum_log;                  // sum_rho log x^rho_ij
    int censor_state = -1;                 // j_tau
    double censored = 0.0;                 // u_T
};

// 0-based class index of a magnitude; throws below the completeness threshold.
int classify_magnitude(double magnitude, const StateSpace& space);

// Catalog (sorted, no duplicate stamps) -> sequence relative to the first
// event; horizon_day is on the catalog day axis and must not precede the
// last event.
SequenceData build_sequence(const EventCatalog& catalog, const StateSpace& space,
                            double horizon_day);

struct SplitResult {
    SequenceData historical;
    SequenceData current;
    int cut_index = 0;  // 0-based index of the event closing the historical part
};

// Smallest prefix whose transition counts are all >= min_count becomes the
// historical part; the cut event is the current part's origin.
SplitResult split_catalog(const SequenceData& seq, int min_count);

TransitionStats sufficient_stats(const SequenceData& seq);

}  // namespace mrp
