#include "mrp/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mrp {

StateSpace::StateSpace(std::vector<double> thresholds) : thresholds_(std::move(thresholds)) {
    require(thresholds_.size() >= 2, "state space needs at least two thresholds");
    for (size_t k = 1; k < thresholds_.size(); ++k)
        require(thresholds_[k] > thresholds_[k - 1], "thresholds must be strictly ascending");
}

void SequenceData::validate() const {
    require(n_states >= 1, "sequence: state count must be positive");
    require(!states.empty(), "sequence: empty state path");
    require(states.size() == times.size() + 1, "sequence: length(states) must be length(times)+1");
    for (int j : states)
        require(j >= 0 && j < n_states, "sequence: state index out of range");
    for (double x : times)
        require(x > 0.0, "sequence: inter-occurrence times must be positive");
    require(censored >= 0.0, "sequence: censored tail must be non-negative");
}

int classify_magnitude(double magnitude, const StateSpace& space) {
    const auto& th = space.thresholds();
    if (magnitude < th.front())
        fail("magnitude " + fmt_double(magnitude) + " below completeness threshold " +
             fmt_double(th.front()));
    // left-closed right-open classes, last one unbounded
    auto it = std::upper_bound(th.begin(), th.end(), magnitude);
    return static_cast<int>(it - th.begin()) - 1;
}

SequenceData build_sequence(const EventCatalog& catalog, const StateSpace& space,
                            double horizon_day) {
    require(!catalog.empty(), "catalog is empty");
    for (size_t k = 1; k < catalog.size(); ++k) {
        require(catalog[k].day >= catalog[k - 1].day, "catalog must be sorted by time");
        if (catalog[k].day == catalog[k - 1].day)
            fail("two events share timestamp (day " + fmt_double(catalog[k].day) +
                 "): zero holding times are not representable");
    }
    require(horizon_day >= catalog.back().day, "horizon precedes the last event");

    SequenceData seq;
    seq.n_states = space.n_states();
    seq.states.reserve(catalog.size());
    for (const auto& ev : catalog) seq.states.push_back(classify_magnitude(ev.magnitude, space));
    seq.times.reserve(catalog.size() - 1);
    for (size_t k = 1; k < catalog.size(); ++k)
        seq.times.push_back(catalog[k].day - catalog[k - 1].day);
    seq.horizon = horizon_day - catalog.front().day;
    seq.censored = horizon_day - catalog.back().day;
    seq.validate();
    return seq;
}

namespace {

std::string transition_label(int i, int j) {
    // states are 1-based in every message and file
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

SplitResult split_catalog(const SequenceData& seq, int min_count) {
    seq.validate();
    require(min_count >= 1, "min_count must be >= 1");
    const int s = seq.n_states;
    const int tau = seq.n_transitions();

    Grid<int> counts(s, 0);
    int deficient = s * s;
    auto bump = [&](int i, int j) {
        if (counts(i, j)++ == min_count - 1) --deficient;
    };

    int cut = -1;
    for (int k = 0; k < tau; ++k) {
        bump(seq.states[k], seq.states[k + 1]);
        if (deficient == 0) {
            cut = k + 1;  // event index closing the prefix
            break;
        }
    }
    if (cut < 0) {
        std::ostringstream msg;
        msg << "cannot reach " << min_count << " occurrences for transition(s):";
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j)
                if (counts(i, j) < min_count)
                    msg << " " << transition_label(i, j) << " has " << counts(i, j);
        fail(msg.str());
    }

    SplitResult out;
    out.cut_index = cut;

    out.historical.n_states = s;
    out.historical.states.assign(seq.states.begin(), seq.states.begin() + cut + 1);
    out.historical.times.assign(seq.times.begin(), seq.times.begin() + cut);
    out.historical.censored = 0.0;
    out.historical.horizon =
        std::accumulate(out.historical.times.begin(), out.historical.times.end(), 0.0);

    out.current.n_states = s;
    out.current.states.assign(seq.states.begin() + cut, seq.states.end());
    out.current.times.assign(seq.times.begin() + cut, seq.times.end());
    out.current.censored = seq.censored;
    out.current.horizon =
        std::accumulate(out.current.times.begin(), out.current.times.end(), seq.censored);

    out.historical.validate();
    out.current.validate();
    return out;
}

TransitionStats sufficient_stats(const SequenceData& seq) {
    seq.validate();
    const int s = seq.n_states;
    TransitionStats st;
    st.n_states = s;
    st.count = Grid<int>(s, 0);
    st.times = Grid<std::vector<double>>(s);
    st.sum_log = Grid<double>(s, 0.0);
    for (int k = 0; k < seq.n_transitions(); ++k) {
        const int i = seq.states[k];
        const int j = seq.states[k + 1];
        const double x = seq.times[k];
        ++st.count(i, j);
        st.times(i, j).push_back(x);
        st.sum_log(i, j) += std::log(x);
    }
    st.censor_state = seq.states.back();
    st.censored = seq.censored;
    return st;
}

}  // namespace mrp
