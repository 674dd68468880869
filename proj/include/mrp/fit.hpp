#pragma once

#include <string>
#include <vector>

#include "mrp/catalog.hpp"
#include "mrp/prior.hpp"
#include "mrp/sampler.hpp"

namespace mrp {

// Elicitation outcome: the historical/current split, priors for every
// transition, and notes about quantile orders that had to be raised.
struct ElicitResult {
    SplitResult split;
    TransitionStats stats_historical;
    TransitionStats stats_current;
    ModelPriors priors;
    std::vector<std::string> repairs;  // "(i,j): q raised from a to b"
};

ElicitResult elicit_model(const SequenceData& seq, const ElicitOptions& options);

struct FitResult {
    ElicitResult elicitation;
    ChainOutput chains;
};

// Split, elicit, then run the Gibbs sampler on the current part. Both the
// standard pipeline and the backtest go through here so that equal inputs
// and seeds give bit-identical chains.
FitResult fit_model(const SequenceData& seq, const ElicitOptions& options,
                    const GibbsConfig& gibbs, int jobs = 1);

// Content digests of in-memory structures (bit patterns of the numbers).
std::uint64_t digest_priors(const ModelPriors& priors);
std::uint64_t digest_sequence(const SequenceData& seq);

}  // namespace mrp
