#pragma once

// Shared fixtures for the test suite: synthetic-series generators, a
// deterministic cross-platform normal sampler, and independent oracles
// (weighted SSE, BIC, exhaustive segmentation search) that deliberately
// re-derive the quantities the library computes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "recipgrowth/fit.hpp"
#include "recipgrowth/series.hpp"

namespace testhelp {

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return out;
}

inline recipgrowth::TimeSeries make_series(const std::vector<double>& t,
                                           const std::vector<double>& v,
                                           std::string unit = "units") {
    std::vector<recipgrowth::TimePoint> pts;
    for (std::size_t i = 0; i < t.size(); ++i) pts.push_back({t[i], v[i]});
    return recipgrowth::TimeSeries(std::move(pts), std::move(unit));
}

// Box-Muller over raw mt19937 draws: std::normal_distribution is
// implementation-defined, and the classifier robustness counts depend on
// the exact noise stream, so the sampler is pinned here.
class Gauss {
public:
    explicit Gauss(std::uint32_t seed) : rng_(seed) {}

    double operator()() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = (static_cast<double>(rng_()) + 1.0) / 4294967296.0; // (0, 1]
        double u2 = static_cast<double>(rng_()) / 4294967296.0;         // [0, 1)
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937 rng_;
    bool have_ = false;
    double spare_ = 0.0;
};

inline std::vector<double> noisy(const std::vector<double>& values, double sigma,
                                 std::uint32_t seed) {
    Gauss g(seed);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] * std::exp(sigma * g());
    return out;
}

// ---- synthetic-family generators (values strictly positive by design) ----

inline recipgrowth::TimeSeries gen_line(double a0, double a1, double t_lo, double t_hi, int n) {
    auto t = linspace(t_lo, t_hi, n);
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = 1.0 / (a0 + a1 * t[i]);
    return make_series(t, v);
}

struct GridCase {
    std::vector<double> t;
    std::vector<double> v;
};

inline GridCase grid_hyperbolic1(double a0, double a1, int n) {
    GridCase c;
    c.t = linspace(0.0, 0.8 * (a0 / -a1), n);
    for (double t : c.t) c.v.push_back(1.0 / (a0 + a1 * t));
    return c;
}

inline GridCase grid_decreasing(double a0, double a1, int n) {
    GridCase c;
    c.t = linspace(0.0, 3.0 * a0 / a1, n);
    for (double t : c.t) c.v.push_back(1.0 / (a0 + a1 * t));
    return c;
}

inline GridCase grid_exponential(double amplitude, double rate, int n) {
    GridCase c;
    c.t = linspace(0.0, 2.2 / rate, n);
    for (double t : c.t) c.v.push_back(amplitude * std::exp(rate * t));
    return c;
}

inline GridCase grid_order2(double curv, double t0, int n) {
    GridCase c;
    c.t = linspace(0.0, 0.8 * t0, n);
    for (double t : c.t) c.v.push_back(1.0 / (curv * (t0 - t) * (t0 - t)));
    return c;
}

inline GridCase grid_order3(double amp, double t_mid, int n) {
    GridCase c;
    double s = t_mid / std::cbrt(0.8); // reciprocal stays >= 0.2*amp on [0, 2*t_mid]
    c.t = linspace(0.0, 2.0 * t_mid, n);
    for (double t : c.t) {
        double u = (t_mid - t) / s;
        c.v.push_back(1.0 / (amp * (1.0 + u * u * u)));
    }
    return c;
}

// ---- independent oracles ----

inline double oracle_weight(double value, recipgrowth::Weighting w) {
    using recipgrowth::Weighting;
    if (w == Weighting::uniform) return 1.0;
    if (w == Weighting::value_squared) return value * value;
    return value * value * value * value;
}

inline double oracle_bic(double sse, std::size_t n, int params, double scale) {
    double nd = static_cast<double>(n);
    double floor = nd * (1e-12 * scale) * (1e-12 * scale);
    double sse_eff = std::max(sse, floor);
    return nd * std::log(sse_eff / nd) + params * std::log(nd);
}

// Weighted reciprocal-space SSE of a refit on points [begin, end), computed
// from the public fit plus the documented weight formula.
inline double oracle_segment_sse(const recipgrowth::TimeSeries& s, std::size_t begin,
                                 std::size_t end, recipgrowth::Weighting w) {
    std::vector<recipgrowth::TimePoint> pts(s.points().begin() + static_cast<long>(begin),
                                            s.points().begin() + static_cast<long>(end));
    recipgrowth::TimeSeries part(pts, s.unit(), s.label());
    recipgrowth::HyperbolicFit fit = recipgrowth::fit_first_order(part, {w});
    double sse = 0.0;
    for (const auto& p : pts) {
        double r = 1.0 / p.value - (fit.a0 + fit.a1 * p.t);
        sse += oracle_weight(p.value, w) * r * r;
    }
    return sse;
}

struct OracleSegmentation {
    int segments = 0;
    double sse = 0.0;
    double bic = 0.0;
};

// Exhaustive enumeration of every admissible breakpoint placement, with the
// same selection rule the library documents (min BIC; fewer segments kept
// when within 2 of the minimum). Practical for series up to ~60 points.
inline OracleSegmentation oracle_enumerate(const recipgrowth::TimeSeries& s, int max_segments,
                                           int min_pts, recipgrowth::Weighting w) {
    const std::size_t n = s.size();
    const std::size_t m = static_cast<std::size_t>(min_pts);
    double scale = 0.0;
    for (const auto& p : s.points()) scale += std::abs(1.0 / p.value);
    scale /= static_cast<double>(n);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> best_sse(static_cast<std::size_t>(max_segments) + 1, inf);

    std::vector<std::size_t> starts; // start index of each segment after the first
    for (int segs = 1; segs <= max_segments; ++segs) {
        if (n < static_cast<std::size_t>(segs) * m) continue;
        std::size_t remaining_total = static_cast<std::size_t>(segs);
        // place(lo, k): current segment starts at lo, k interior boundaries left
        std::function<void(std::size_t, std::size_t)> place = [&](std::size_t lo, std::size_t k) {
            if (k == 0) {
                if (n - lo < m) return;
                double total = 0.0;
                std::size_t start = 0;
                for (std::size_t b : starts) {
                    total += oracle_segment_sse(s, start, b, w);
                    start = b;
                }
                total += oracle_segment_sse(s, start, n, w);
                std::size_t idx = static_cast<std::size_t>(segs);
                best_sse[idx] = std::min(best_sse[idx], total);
                return;
            }
            for (std::size_t b = lo + m; b + k * m <= n; ++b) {
                starts.push_back(b);
                place(b, k - 1);
                starts.pop_back();
            }
        };
        (void)remaining_total;
        starts.clear();
        place(0, static_cast<std::size_t>(segs) - 1);
    }

    double min_bic = inf;
    std::vector<double> bics(static_cast<std::size_t>(max_segments) + 1, inf);
    for (int segs = 1; segs <= max_segments; ++segs) {
        std::size_t idx = static_cast<std::size_t>(segs);
        if (!std::isfinite(best_sse[idx])) continue;
        bics[idx] = oracle_bic(best_sse[idx], n, 3 * segs - 1, scale);
        min_bic = std::min(min_bic, bics[idx]);
    }
    OracleSegmentation out;
    for (int segs = 1; segs <= max_segments; ++segs) {
        std::size_t idx = static_cast<std::size_t>(segs);
        if (bics[idx] - min_bic < 2.0) {
            out.segments = segs;
            out.sse = best_sse[idx];
            out.bic = bics[idx];
            break;
        }
    }
    return out;
}

} // namespace testhelp
