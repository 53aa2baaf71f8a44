#include "recipgrowth/divergence.hpp"

#include <cmath>
#include <limits>

namespace recipgrowth {

std::string to_string(Direction d) {
    switch (d) {
        case Direction::slower: return "slower";
        case Direction::faster: return "faster";
        case Direction::none: return "none";
    }
    throw ArgumentError("unknown direction");
}

Direction divergence_sign_of(const std::vector<double>& residual_run) {
    if (residual_run.empty())
        throw ArgumentError("divergence_sign_of: empty residual run");
    bool all_pos = true, all_neg = true;
    for (double r : residual_run) {
        all_pos = all_pos && r > 0.0;
        all_neg = all_neg && r < 0.0;
    }
    if (all_pos) return Direction::slower;
    if (all_neg) return Direction::faster;
    throw ArgumentError("divergence_sign_of: residual run is not same-signed");
}

DivergenceReport detect_divergence(const TimeSeries& series, Window baseline_window,
                                   const DivergenceParams& params, const FitOptions& options) {
    if (params.z_threshold < 0.0)
        throw ArgumentError("detect_divergence: z_threshold must be >= 0");
    if (params.min_run < 1)
        throw ArgumentError("detect_divergence: min_run must be >= 1");

    TimeSeries base = slice(series, baseline_window.t_min, baseline_window.t_max);
    if (base.size() < 4)
        throw InsufficientDataError("detect_divergence: baseline window holds " +
                                    std::to_string(base.size()) + " points, need at least 4");

    std::vector<TimePoint> tail;
    for (const auto& p : series.points())
        if (p.t > baseline_window.t_max) tail.push_back(p);
    if (tail.empty())
        throw ArgumentError("detect_divergence: series does not extend past the baseline window");

    DivergenceReport report;
    report.baseline = fit_first_order(base, options);

    // Standardize post-window residuals by the baseline's reciprocal-space
    // RMSE. A perfect baseline (rmse 0) makes any nonzero residual count.
    double rmse = report.baseline.rmse_recip;
    std::vector<double> resid(tail.size()), z(tail.size());
    for (std::size_t i = 0; i < tail.size(); ++i) {
        resid[i] = 1.0 / tail[i].value - (report.baseline.a0 + report.baseline.a1 * tail[i].t);
        if (rmse > 0.0)
            z[i] = resid[i] / rmse;
        else
            z[i] = resid[i] == 0.0 ? 0.0
                                   : std::copysign(std::numeric_limits<double>::infinity(), resid[i]);
    }

    // The run must be terminal: walk back from the last sample while points
    // keep the last point's sign and clear the threshold.
    std::size_t len = 0;
    double last_sign = resid.back() > 0.0 ? 1.0 : (resid.back() < 0.0 ? -1.0 : 0.0);
    if (last_sign != 0.0) {
        for (std::size_t i = tail.size(); i-- > 0;) {
            bool same_sign = resid[i] * last_sign > 0.0;
            if (!same_sign || std::abs(z[i]) <= params.z_threshold) break;
            ++len;
        }
    }

    if (len >= static_cast<std::size_t>(params.min_run)) {
        std::size_t start = tail.size() - len;
        std::vector<double> run(resid.begin() + static_cast<long>(start), resid.end());
        report.direction = divergence_sign_of(run);
        report.onset = tail[start].t;
        report.run_length = static_cast<int>(len);
        for (std::size_t i = start; i < tail.size(); ++i)
            report.max_z = std::max(report.max_z, std::abs(z[i]));
    }
    return report;
}

} // namespace recipgrowth
