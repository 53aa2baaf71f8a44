#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "recipgrowth/errors.hpp"

namespace recipgrowth {

/// One sample: calendar year (astronomical numbering, so 1 BC = 0 and years
/// are linear across eras) and a strictly positive value in the series unit.
struct TimePoint {
    double t = 0.0;
    double value = 0.0;
};

/// Immutable ordered series of (year, positive value) samples with unit and
/// label text. Construction sorts by year and validates the invariants:
/// strictly increasing years (duplicates rejected), finite years, values
/// finite and > 0. The unit may be empty (CSV input without a unit
/// directive produces one).
class TimeSeries {
public:
    TimeSeries() = default;
    TimeSeries(std::vector<TimePoint> points, std::string unit = {}, std::string label = {});

    const std::vector<TimePoint>& points() const noexcept { return points_; }
    const std::string& unit() const noexcept { return unit_; }
    const std::string& label() const noexcept { return label_; }

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const TimePoint& operator[](std::size_t i) const noexcept { return points_[i]; }

    /// Year of the first / last sample. Throws ArgumentError on an empty series.
    double t_min() const;
    double t_max() const;

private:
    std::vector<TimePoint> points_;
    std::string unit_;
    std::string label_;
};

/// Parse CSV text into a TimeSeries.
///
/// Format: UTF-8 `year,value` rows; decimal point only, no thousands
/// separators; years may be negative. `#`-prefixed lines are comments; the
/// directives `# unit: ...` and `# label: ...` set the series metadata, and
/// any other directive (`# source:`, `# scale:`, `# transcribed:`, ...) is
/// free-form provenance kept in the file only. One optional `year,value`
/// header row and blank lines are skipped. Rows may appear in any order;
/// the result is sorted by year.
///
/// Errors: ParseError with a 1-based line number for non-numeric or
/// malformed fields and for duplicate years; DomainError (message carries
/// the line number) for values <= 0 or non-finite fields.
TimeSeries parse_csv(std::string_view text);

/// Point-wise (t, 1/value). The unit becomes "1/(unit)"; an existing
/// "1/(...)" wrapper is unwrapped instead so applying reciprocal twice
/// restores the original unit exactly. Empty series maps to empty series.
TimeSeries reciprocal(const TimeSeries& series);

/// Subseries with t_min <= t <= t_max, order and values untouched.
/// Throws ArgumentError if t_min > t_max.
TimeSeries slice(const TimeSeries& series, double t_min, double t_max);

/// Copy of the series with the listed years removed; years not present are
/// ignored. Matching is exact on the stored year values.
TimeSeries exclude(const TimeSeries& series, const std::vector<double>& years);

} // namespace recipgrowth
