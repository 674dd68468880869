#pragma once

#include <functional>

#include "mrp/rng.hpp"

namespace mrp {

// One evaluation of a concave log density: value and first derivative.
struct ArsEval {
    double value = 0.0;
    double slope = 0.0;
};

using ArsLogDensity = std::function<ArsEval(double)>;

// Exact sampling from a log-concave density known up to a constant
// (Gilks-Wild adaptive rejection sampling). The envelope is the piecewise
// linear hull of tangents at adaptively grown abscissae; chords between
// abscissae give the squeeze. `lo` must be finite, `hi` may be +inf in which
// case initial abscissae come from a doubling search that brackets the mode.
//
// Throws when the target reveals itself non-concave (a point above the
// envelope or slopes increasing in x) or when max_rejections is exceeded.
double ars_sample(const ArsLogDensity& log_density, double lo, double hi, int init_points,
                  int max_rejections, Rng& rng);

}  // namespace mrp
