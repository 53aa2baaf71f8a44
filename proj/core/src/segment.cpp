#include "recipgrowth/segment.hpp"

#include <cmath>
#include <limits>

#include "detail.hpp"

namespace recipgrowth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TimeSeries subseries(const TimeSeries& s, std::size_t begin, std::size_t end) {
    std::vector<TimePoint> pts(s.points().begin() + static_cast<long>(begin),
                               s.points().begin() + static_cast<long>(end));
    return TimeSeries(std::move(pts), s.unit(), s.label());
}

} // namespace

SegmentedFit fit_segmented(const TimeSeries& series, int max_segments, int min_pts,
                           const FitOptions& options) {
    if (max_segments < 1)
        throw ArgumentError("fit_segmented: max_segments must be >= 1");
    if (min_pts < 3)
        throw ArgumentError("fit_segmented: min_pts must be >= 3 (a 2-parameter line needs slack)");
    const auto& pts = series.points();
    const std::size_t n = pts.size();
    const std::size_t m = static_cast<std::size_t>(min_pts);
    if (n < static_cast<std::size_t>(max_segments) * m)
        throw InsufficientDataError("fit_segmented: need at least max_segments*min_pts = " +
                                    std::to_string(max_segments * min_pts) + " points, got " +
                                    std::to_string(n));

    // cost[i][j] = weighted reciprocal-space SSE of one line on points [i, j).
    // Shares line_core with fit_first_order so the dynamic program ranks
    // exactly the values a direct refit would produce.
    std::vector<std::vector<double>> cost(n + 1, std::vector<double>(n + 1, kInf));
    double sum_abs_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum_abs_y += std::abs(1.0 / pts[i].value);
    for (std::size_t i = 0; i + m <= n; ++i)
        for (std::size_t j = i + m; j <= n; ++j)
            cost[i][j] = detail::line_core(pts, i, j, options.weighting).sse_obj;

    // best[s][j]: minimal total cost splitting the first j points into
    // exactly s segments; split[s][j] reconstructs the last boundary.
    const int smax = std::min<std::size_t>(static_cast<std::size_t>(max_segments), n / m);
    std::vector<std::vector<double>> best(smax + 1, std::vector<double>(n + 1, kInf));
    std::vector<std::vector<std::size_t>> split(smax + 1, std::vector<std::size_t>(n + 1, 0));
    best[0][0] = 0.0;
    for (int s = 1; s <= smax; ++s) {
        for (std::size_t j = s * m; j <= n; ++j) {
            for (std::size_t i = (s - 1) * m; i + m <= j; ++i) {
                if (best[s - 1][i] == kInf || cost[i][j] == kInf) continue;
                double c = best[s - 1][i] + cost[i][j];
                if (c < best[s][j]) {
                    best[s][j] = c;
                    split[s][j] = i;
                }
            }
        }
    }

    double scale = sum_abs_y / static_cast<double>(n);
    double min_bic = kInf;
    std::vector<double> bics(smax + 1, kInf);
    for (int s = 1; s <= smax; ++s) {
        if (best[s][n] == kInf) continue;
        bics[s] = detail::bic_from_sse(best[s][n], n, 3 * s - 1, scale);
        min_bic = std::min(min_bic, bics[s]);
    }
    // Prefer fewer segments whenever the BIC gain of more is below 2.
    int chosen = 0;
    for (int s = 1; s <= smax; ++s) {
        if (bics[s] - min_bic < 2.0) {
            chosen = s;
            break;
        }
    }
    if (chosen == 0)
        throw InsufficientDataError("fit_segmented: no admissible segmentation");

    std::vector<std::size_t> bounds(chosen + 1, 0);
    bounds[chosen] = n;
    for (int s = chosen; s >= 1; --s) bounds[s - 1] = split[s][bounds[s]];

    SegmentedFit out;
    for (int s = 0; s < chosen; ++s) {
        TimeSeries part = subseries(series, bounds[s], bounds[s + 1]);
        out.segments.push_back(fit_first_order(part, options));
        if (s > 0) out.breakpoints.push_back(pts[bounds[s]].t);
    }
    out.sse_recip = best[chosen][n];
    out.bic = bics[chosen];
    return out;
}

double acceleration_ratio(const SegmentedFit& seg, std::size_t i) {
    if (i + 1 >= seg.segments.size())
        throw ArgumentError("acceleration_ratio: breakpoint index " + std::to_string(i) +
                            " out of range for " + std::to_string(seg.segments.size()) +
                            " segments");
    double denom = seg.segments[i].a1;
    if (denom == 0.0)
        throw UndefinedRatioError("acceleration_ratio: zero slope in segment " + std::to_string(i));
    return std::abs(seg.segments[i + 1].a1) / std::abs(denom);
}

} // namespace recipgrowth
