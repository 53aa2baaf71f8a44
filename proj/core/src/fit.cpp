#include "recipgrowth/fit.hpp"

#include <cmath>
#include <limits>

#include "detail.hpp"

namespace recipgrowth {

namespace detail {

double weight_of(double value, Weighting weighting) {
    switch (weighting) {
        case Weighting::uniform: return 1.0;
        case Weighting::value_squared: return value * value;
        case Weighting::value_pow4: return (value * value) * (value * value);
    }
    throw ArgumentError("unknown weighting");
}

LineCore line_core(const std::vector<TimePoint>& pts, std::size_t begin, std::size_t end,
                   Weighting weighting) {
    // Weighted OLS of y = 1/value on t, centered at the weighted mean year:
    // raw years up to ~2000 against slopes ~1e-6 are too ill-conditioned for
    // the uncentered normal equations.
    double sw = 0.0, swt = 0.0, swy = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        double y = 1.0 / pts[i].value;
        double w = weight_of(pts[i].value, weighting);
        sw += w;
        swt += w * pts[i].t;
        swy += w * y;
    }
    double tbar = swt / sw;
    double ybar = swy / sw;

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        double y = 1.0 / pts[i].value;
        double w = weight_of(pts[i].value, weighting);
        double dt = pts[i].t - tbar;
        sxx += w * dt * dt;
        sxy += w * dt * (y - ybar);
    }
    if (sxx == 0.0)
        throw DegenerateDesignError("fit_first_order: all sample years identical");

    LineCore core;
    core.a1 = sxy / sxx;
    core.a0 = ybar - core.a1 * tbar;
    for (std::size_t i = begin; i < end; ++i) {
        double y = 1.0 / pts[i].value;
        double w = weight_of(pts[i].value, weighting);
        double r = (y - ybar) - core.a1 * (pts[i].t - tbar);
        core.sse_obj += w * r * r;
        core.sum_abs_y += std::abs(y);
    }
    return core;
}

} // namespace detail

std::string to_string(Weighting w) {
    switch (w) {
        case Weighting::uniform: return "uniform";
        case Weighting::value_squared: return "value_squared";
        case Weighting::value_pow4: return "value_pow4";
    }
    throw ArgumentError("unknown weighting");
}

Weighting weighting_from_string(std::string_view name) {
    if (name == "uniform") return Weighting::uniform;
    if (name == "value_squared") return Weighting::value_squared;
    if (name == "value_pow4") return Weighting::value_pow4;
    throw ArgumentError("unknown weighting '" + std::string(name) +
                        "'; expected uniform, value_squared or value_pow4");
}

HyperbolicFit fit_first_order(const TimeSeries& series, const FitOptions& options) {
    const auto& pts = series.points();
    if (pts.size() < 2)
        throw InsufficientDataError("fit_first_order: need at least 2 points, got " +
                                    std::to_string(pts.size()));

    detail::LineCore core = detail::line_core(pts, 0, pts.size(), options.weighting);

    HyperbolicFit fit;
    fit.a0 = core.a0;
    fit.a1 = core.a1;
    fit.window = {pts.front().t, pts.back().t};
    fit.n = static_cast<int>(pts.size());

    // Goodness metrics. rmse_recip is unweighted by definition; r2 uses the
    // fit's own weighting so it stays in [0, 1] for weighted fits too.
    double n = static_cast<double>(pts.size());
    double sw = 0.0, swy = 0.0;
    for (const auto& p : pts) {
        double w = detail::weight_of(p.value, options.weighting);
        sw += w;
        swy += w / p.value;
    }
    double ybar_w = swy / sw;

    double sse_plain = 0.0, sst_w = 0.0, sse_direct = 0.0;
    bool direct_ok = true;
    for (const auto& p : pts) {
        double y = 1.0 / p.value;
        double r = y - (fit.a0 + fit.a1 * p.t);
        sse_plain += r * r;
        double w = detail::weight_of(p.value, options.weighting);
        sst_w += w * (y - ybar_w) * (y - ybar_w);
        double line = fit.a0 + fit.a1 * p.t;
        if (line <= 0.0)
            direct_ok = false;
        else
            sse_direct += (p.value - 1.0 / line) * (p.value - 1.0 / line);
    }
    fit.rmse_recip = std::sqrt(sse_plain / n);
    fit.rmse_direct = direct_ok ? std::sqrt(sse_direct / n)
                                : std::numeric_limits<double>::quiet_NaN();

    double floor = detail::bic_floor(pts.size(), core.sum_abs_y / n);
    if (sst_w <= floor) {
        // Constant-reciprocal data: define r2 as 1 for an essentially exact
        // fit, 0 otherwise, instead of 0/0.
        fit.r2_recip = core.sse_obj <= floor ? 1.0 : 0.0;
    } else {
        double r2 = 1.0 - core.sse_obj / sst_w;
        fit.r2_recip = std::min(1.0, std::max(0.0, r2));
    }
    return fit;
}

double evaluate(const HyperbolicFit& fit, double t) {
    double line = fit.a0 + fit.a1 * t;
    if (line <= 0.0)
        throw BeyondSingularityError("evaluate: model is at or past its singularity at t = " +
                                     std::to_string(t));
    return 1.0 / line;
}

std::optional<double> singularity_time(const HyperbolicFit& fit) {
    if (fit.a1 >= 0.0) return std::nullopt;
    return -fit.a0 / fit.a1;
}

double growth_rate(const HyperbolicFit& fit, double t) {
    return -fit.a1 * evaluate(fit, t);
}

std::vector<Residual> residuals_recip(const HyperbolicFit& fit, const TimeSeries& series) {
    if (series.empty())
        throw ArgumentError("residuals_recip: empty series");
    std::vector<Residual> out;
    out.reserve(series.size());
    for (const auto& p : series.points())
        out.push_back({p.t, 1.0 / p.value - (fit.a0 + fit.a1 * p.t)});
    return out;
}

} // namespace recipgrowth
