#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mrp {

// All recoverable failures (bad input, unattainable elicitation, numeric
// breakdown) surface as this exception; the CLI turns it into an error JSON.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

// Dense s-by-s grid; the state space is small so no sparse tricks.
template <typename T>
class Grid {
public:
    Grid() = default;
    explicit Grid(int n, const T& init = T{}) : n_(n), cells_(static_cast<size_t>(n) * n, init) {}

    T& operator()(int i, int j) { return cells_[static_cast<size_t>(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return cells_[static_cast<size_t>(i) * n_ + j]; }

    int size() const { return n_; }
    const std::vector<T>& flat() const { return cells_; }
    std::vector<T>& flat() { return cells_; }

    bool operator==(const Grid&) const = default;

private:
    int n_ = 0;
    std::vector<T> cells_;
};

// Shortest round-trip decimal representation; keeps file output byte-stable.
std::string fmt_double(double v);

// FNV-1a, used for content digests in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);

std::string to_hex(std::uint64_t v);

}  // namespace mrp
