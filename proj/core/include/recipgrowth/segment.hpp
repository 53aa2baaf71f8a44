#pragma once

#include <cstddef>
#include <vector>

#include "recipgrowth/fit.hpp"

namespace recipgrowth {

/// Piecewise first-order hyperbolic fit: consecutive runs of samples, each
/// fitted by its own reciprocal-space line.
struct SegmentedFit {
    /// Breakpoint years, one per regime change, ascending. Each breakpoint
    /// is reported as the first sample year of the incoming segment (the
    /// year at which the new line takes over).
    std::vector<double> breakpoints;
    /// One fit per segment, in time order; segments.size() == breakpoints.size() + 1.
    std::vector<HyperbolicFit> segments;
    /// Summed per-segment least-squares objective in reciprocal space
    /// (plain SSE under uniform weighting, weighted SSE otherwise).
    double sse_recip = 0.0;
    /// n*ln(sse/n) + p*ln(n) with p = 2 per segment + 1 per breakpoint;
    /// the SSE is floored at rounding scale so noiseless fits stay comparable.
    double bic = 0.0;
};

/// Find the BIC-optimal split of the series into 1..max_segments runs of
/// consecutive samples, each of at least min_pts points, with each run
/// fitted independently by fit_first_order. All admissible placements of
/// breakpoints at sample boundaries are searched (dynamic program over
/// prefix costs), so the result is exactly optimal. When a candidate with
/// more segments wins by less than 2 BIC the simpler one is kept.
///
/// Preconditions: max_segments >= 1, min_pts >= 3 (ArgumentError) and
/// series.size() >= max_segments * min_pts (InsufficientDataError).
SegmentedFit fit_segmented(const TimeSeries& series, int max_segments, int min_pts = 4,
                           const FitOptions& options = {});

/// Slope-magnitude ratio |a1(i+1)| / |a1(i)| across breakpoint i: how much
/// the growth law accelerated at the regime change. Throws ArgumentError if
/// i is not a valid breakpoint index and UndefinedRatioError if the
/// denominator slope is zero.
double acceleration_ratio(const SegmentedFit& seg, std::size_t i);

} // namespace recipgrowth
