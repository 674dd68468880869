#include "mrp/rng.hpp"

#include <cmath>

#include "mrp/common.hpp"
#include "mrp/math.hpp"

namespace mrp {

double Rng::normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

double Rng::gamma(double shape) {
    require(shape > 0.0, "gamma draw: shape must be positive");
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform01(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

void Rng::dirichlet(std::span<const double> concentration, std::span<double> out) {
    require(concentration.size() == out.size() && !out.empty(), "dirichlet: size mismatch");
    double total = 0.0;
    for (size_t k = 0; k < out.size(); ++k) {
        out[k] = gamma(concentration[k]);
        total += out[k];
    }
    require(total > 0.0, "dirichlet: degenerate draw");
    for (double& v : out) v /= total;
}

int Rng::categorical_logw(std::span<const double> log_weights) {
    const double norm = log_sum_exp(log_weights);
    require(std::isfinite(norm), "categorical draw: all weights vanish");
    const double u = uniform01();
    double acc = 0.0;
    int last_valid = -1;
    for (size_t k = 0; k < log_weights.size(); ++k) {
        const double w = std::exp(log_weights[k] - norm);
        if (w > 0.0) last_valid = static_cast<int>(k);
        acc += w;
        if (u <= acc) return static_cast<int>(k);
    }
    return last_valid;  // rounding left acc slightly below 1
}

std::uint64_t Rng::derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace mrp
