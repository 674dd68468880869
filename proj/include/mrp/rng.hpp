#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace mrp {

// Seeded random stream with explicit sampling algorithms so a given seed
// reproduces the same draws on any platform (std::* distributions are
// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // strictly inside (0, 1)
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double exponential() { return -std::log(uniform01()); }

    // Box-Muller; always consumes two uniforms, no cached spare.
    double normal();

    // Marsaglia-Tsang; shape < 1 via the boost U^(1/a) trick. Unit rate.
    double gamma(double shape);
    double gamma(double shape, double rate) { return gamma(shape) / rate; }

    double weibull(double shape, double scale) {
        return scale * std::pow(-std::log(uniform01()), 1.0 / shape);
    }

    // Draw p ~ Dirichlet(concentration) into out (sizes must match).
    void dirichlet(std::span<const double> concentration, std::span<double> out);

    // Index draw from unnormalized log weights (log-sum-exp normalization).
    int categorical_logw(std::span<const double> log_weights);

    int uniform_int(int n) {  // 0..n-1
        return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
    }

    std::uint64_t raw() { return engine_(); }

    // Stream derivation for chains / parallel jobs: splitmix64 of seed and tag.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

private:
    std::mt19937_64 engine_;
};

}  // namespace mrp
