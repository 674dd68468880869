#include "mrp/ars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mrp/common.hpp"
#include "mrp/math.hpp"

namespace mrp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr size_t kMaxAbscissae = 64;

struct Point {
    double x;
    double h;
    double dh;
};

class Hull {
public:
    Hull(double lo, double hi) : lo_(lo), hi_(hi) {}

    void init(std::vector<Point> pts) {
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
        pts.erase(std::unique(pts.begin(), pts.end(),
                              [](const Point& a, const Point& b) { return a.x == b.x; }),
                  pts.end());
        require(pts.size() >= 2, "ars: need at least two distinct abscissae");
        for (size_t i = 0; i + 1 < pts.size(); ++i) check_slopes(pts[i], pts[i + 1]);
        pts_ = std::move(pts);
        rebuild();
    }

    void insert(const Point& p) {
        if (pts_.size() >= kMaxAbscissae) return;
        auto it = std::lower_bound(pts_.begin(), pts_.end(), p.x,
                                   [](const Point& a, double x) { return a.x < x; });
        if (it != pts_.end() && it->x == p.x) return;
        if (it != pts_.begin()) check_slopes(*std::prev(it), p);
        if (it != pts_.end()) check_slopes(p, *it);
        pts_.insert(it, p);
        rebuild();
    }

    // tangent-hull value at x
    double upper(double x) const {
        const auto it = std::upper_bound(z_.begin(), z_.end(), x);
        const size_t i = static_cast<size_t>(it - z_.begin());
        return pts_[i].h + pts_[i].dh * (x - pts_[i].x);
    }

    // chord squeeze; -inf outside the abscissa range
    double lower(double x) const {
        if (x < pts_.front().x || x > pts_.back().x) return kNegInf;
        auto it = std::upper_bound(pts_.begin(), pts_.end(), x,
                                   [](double v, const Point& p) { return v < p.x; });
        if (it == pts_.begin()) return pts_.front().h;
        if (it == pts_.end()) return pts_.back().h;
        const Point& a = *std::prev(it);
        const Point& b = *it;
        if (b.x == a.x) return a.h;
        return a.h + (x - a.x) * (b.h - a.h) / (b.x - a.x);
    }

    // draw from the normalized piecewise-exponential envelope
    double sample(Rng& rng) const {
        const double total = log_sum_exp(seg_logw_);
        require(std::isfinite(total), "ars: envelope has zero mass");
        const double u = rng.uniform01();
        size_t seg = pts_.size() - 1;
        double acc = 0.0;
        for (size_t i = 0; i < seg_logw_.size(); ++i) {
            acc += std::exp(seg_logw_[i] - total);
            if (u <= acc) {
                seg = i;
                break;
            }
        }
        const double a = seg == 0 ? lo_ : z_[seg - 1];
        const double b = seg + 1 == pts_.size() ? hi_ : z_[seg];
        const double s = pts_[seg].dh;
        const double v = rng.uniform01();
        double x;
        if (std::fabs(s) < 1e-300) {
            x = a + v * (b - a);
        } else if (s < 0.0) {
            x = a + std::log1p(v * std::expm1(s * (b - a))) / s;
        } else {
            x = b + std::log(v + (1.0 - v) * std::exp(-s * (b - a))) / s;
        }
        if (!(x >= a)) x = a;
        if (std::isfinite(b) && x > b) x = b;
        return x;
    }

private:
    static void check_slopes(const Point& left, const Point& right) {
        const double tol = 1e-8 * (1.0 + std::fabs(left.dh) + std::fabs(right.dh));
        if (left.dh < right.dh - tol)
            fail("ars: slopes increase with x, target is not log-concave");
    }

    void rebuild() {
        const size_t k = pts_.size();
        z_.resize(k - 1);
        for (size_t i = 0; i + 1 < k; ++i) {
            const Point& p = pts_[i];
            const Point& n = pts_[i + 1];
            const double ds = p.dh - n.dh;
            double z;
            if (ds <= 1e-12 * (1.0 + std::fabs(p.dh) + std::fabs(n.dh))) {
                z = 0.5 * (p.x + n.x);  // (near-)equal slopes: tangents coincide
            } else {
                z = (n.h - p.h - n.x * n.dh + p.x * p.dh) / ds;
            }
            z_[i] = std::clamp(z, p.x, n.x);
        }
        seg_logw_.resize(k);
        for (size_t i = 0; i < k; ++i) {
            const double a = i == 0 ? lo_ : z_[i - 1];
            const double b = i + 1 == k ? hi_ : z_[i];
            seg_logw_[i] = segment_log_mass(pts_[i], a, b);
        }
    }

    // log integral of exp(tangent at p) over [a, b]
    static double segment_log_mass(const Point& p, double a, double b) {
        if (!(b > a)) return kNegInf;
        const double s = p.dh;
        if (std::isinf(b) && s >= 0.0) fail("ars: envelope diverges on an unbounded segment");
        if (std::fabs(s) < 1e-300) return p.h + std::log(b - a);
        const double la = s * (a - p.x);
        const double lb = std::isinf(b) ? kNegInf : s * (b - p.x);
        const double m = std::max(la, lb);
        const double d = -std::fabs(lb - la);
        const double diff = std::isinf(d) ? 0.0 : std::log1p(-std::exp(d));
        return p.h + m + diff - std::log(std::fabs(s));
    }

    double lo_, hi_;
    std::vector<Point> pts_;
    std::vector<double> z_;
    std::vector<double> seg_logw_;
};

Point eval_at(const ArsLogDensity& f, double x) {
    const ArsEval e = f(x);
    return {x, e.value, e.slope};
}

// Nudge x toward `interior` until the log density is finite.
Point eval_finite(const ArsLogDensity& f, double x, double interior) {
    Point p = eval_at(f, x);
    for (int tries = 0; !std::isfinite(p.h) && tries < 10; ++tries) {
        x += 0.5 * (interior - x);
        p = eval_at(f, x);
    }
    if (!std::isfinite(p.h)) fail("ars: log density not finite near abscissa " + fmt_double(x));
    return p;
}

std::vector<Point> initial_points(const ArsLogDensity& f, double lo, double hi, int n) {
    std::vector<Point> pts;
    if (std::isfinite(hi)) {
        const double mid = 0.5 * (lo + hi);
        for (int k = 1; k <= n; ++k) {
            const double x = lo + (hi - lo) * static_cast<double>(k) / (n + 1);
            pts.push_back(eval_finite(f, x, mid));
        }
        return pts;
    }
    // unbounded above: walk right from lo, doubling the offset, until the
    // slope turns negative (the mode is then bracketed or at the boundary)
    double delta = 0.01 * std::max(1.0, std::fabs(lo));
    Point p = eval_finite(f, lo + delta, lo + 16.0 * delta);
    delta = std::max(p.x - lo, 1e-12);
    pts.push_back(p);
    bool bracketed = p.dh < 0.0;
    double last_finite = p.x;
    for (int t = 0; t < 1100 && !bracketed; ++t) {
        delta *= 2.0;
        double x = lo + delta;
        Point cand = eval_at(f, x);
        for (int b = 0; b < 60 && !std::isfinite(cand.h); ++b) {
            x = 0.5 * (last_finite + x);  // overshot into vanishing density
            cand = eval_at(f, x);
        }
        require(std::isfinite(cand.h), "ars: cannot find finite density on the right tail");
        if (cand.x <= last_finite) break;
        pts.push_back(cand);
        last_finite = cand.x;
        delta = cand.x - lo;
        bracketed = cand.dh < 0.0;
    }
    require(bracketed, "ars: no decreasing tail found on unbounded support");
    if (pts.size() < 2) {
        // mode sits against the boundary; pick companions around the first point
        const double d0 = pts.front().x - lo;
        for (double scale : {0.5, 2.0, 4.0, 0.25}) {
            Point extra = eval_at(f, lo + d0 * scale);
            if (std::isfinite(extra.h) && extra.x != pts.front().x) {
                pts.push_back(extra);
                break;
            }
        }
        require(pts.size() >= 2, "ars: cannot place two finite abscissae");
    }
    return pts;
}

}  // namespace

double ars_sample(const ArsLogDensity& log_density, double lo, double hi, int init_points,
                  int max_rejections, Rng& rng) {
    require(std::isfinite(lo), "ars: lower support bound must be finite");
    require(hi > lo, "ars: empty support");
    init_points = std::max(init_points, 3);

    Hull hull(lo, hi);
    hull.init(initial_points(log_density, lo, hi, init_points));

    for (int rejections = 0; rejections <= max_rejections; ++rejections) {
        const double x = hull.sample(rng);
        const double u = hull.upper(x);
        const double logw = std::log(rng.uniform01());
        if (logw <= hull.lower(x) - u) return x;
        const Point p = eval_at(log_density, x);
        if (p.h > u + 1e-8 * (1.0 + std::fabs(u)))
            fail("ars: point above the envelope, target is not log-concave");
        const bool accept = logw <= p.h - u;
        if (std::isfinite(p.h)) hull.insert(p);
        if (accept) return x;
    }
    fail("ars: rejection budget exhausted");
}

}  // namespace mrp
