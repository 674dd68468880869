#include "mrp/fit.hpp"

#include <cstring>

namespace mrp {

namespace {

class DigestStream {
public:
    void add_double(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        add_u64(bits);
    }
    void add_u64(std::uint64_t v) {
        for (int k = 0; k < 8; ++k) {
            h_ ^= (v >> (8 * k)) & 0xFF;
            h_ *= 0x100000001b3ull;
        }
    }
    void add_int(int v) { add_u64(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ull;
};

}  // namespace

ElicitResult elicit_model(const SequenceData& seq, const ElicitOptions& options) {
    ElicitResult out;
    out.split = split_catalog(seq, options.min_count);
    out.stats_historical = sufficient_stats(out.split.historical);
    out.stats_current = sufficient_stats(out.split.current);

    const int s = seq.n_states;
    out.priors.transition = Grid<TransitionPrior>(s);
    out.priors.dirichlet = elicit_dirichlet_prior(out.stats_historical.count,
                                                  options.dirichlet_floor);
    const std::vector<double>& pooled = out.split.historical.times;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            std::string note;
            try {
                out.priors.transition(i, j) = elicit_transition_prior(
                    out.stats_historical.times(i, j), options.q_target, pooled, &note);
            } catch (const Error& e) {
                fail(std::string(e.what()) + " [transition (" + std::to_string(i + 1) + "," +
                     std::to_string(j + 1) + ")]");
            }
            if (!note.empty())
                out.repairs.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                      "): " + note);
        }
    return out;
}

FitResult fit_model(const SequenceData& seq, const ElicitOptions& options,
                    const GibbsConfig& gibbs, int jobs) {
    FitResult out;
    out.elicitation = elicit_model(seq, options);
    out.chains = run_gibbs(out.elicitation.stats_current, out.elicitation.priors, gibbs, jobs);
    out.chains.prior_digest = digest_priors(out.elicitation.priors);
    out.chains.data_digest = digest_sequence(out.elicitation.split.current);
    return out;
}

std::uint64_t digest_priors(const ModelPriors& priors) {
    DigestStream d;
    const int s = priors.transition.size();
    d.add_int(s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const TransitionPrior& pr = priors.transition(i, j);
            d.add_int(pr.m);
            d.add_double(pr.c);
            d.add_double(pr.alpha0);
            d.add_double(pr.alpha1);
            d.add_double(pr.q);
            d.add_double(pr.m >= 1 ? pr.t_q : 0.0);
            d.add_double(pr.m == 0 ? pr.t_range.first : 0.0);
            d.add_double(pr.m == 0 ? pr.t_range.second : 0.0);
            d.add_double(pr.m >= 1 ? pr.mean_log : 0.0);
            d.add_double(priors.dirichlet.gamma(i, j));
        }
    return d.value();
}

std::uint64_t digest_sequence(const SequenceData& seq) {
    DigestStream d;
    d.add_int(seq.n_states);
    for (int j : seq.states) d.add_int(j);
    for (double x : seq.times) d.add_double(x);
    d.add_double(seq.censored);
    d.add_double(seq.horizon);
    return d.value();
}

}  // namespace mrp
