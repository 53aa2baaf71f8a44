#include "recipgrowth/series.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <map>
#include <utility>

#include "detail.hpp"

namespace recipgrowth {

namespace detail {

std::string recip_unit(const std::string& unit) {
    if (unit.size() > 3 && unit.rfind("1/(", 0) == 0 && unit.back() == ')')
        return unit.substr(3, unit.size() - 4);
    if (unit.empty()) return unit;
    return "1/(" + unit + ")";
}

} // namespace detail

namespace {

void validate_points(const std::vector<TimePoint>& points) {
    for (const auto& p : points) {
        if (!std::isfinite(p.t))
            throw DomainError("time series: year is not finite");
        if (!std::isfinite(p.value) || p.value <= 0.0)
            throw DomainError("time series: values must be finite and > 0");
    }
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].t == points[i - 1].t)
            throw DomainError("time series: duplicate year " + std::to_string(points[i].t));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

} // namespace

TimeSeries::TimeSeries(std::vector<TimePoint> points, std::string unit, std::string label)
    : points_(std::move(points)), unit_(std::move(unit)), label_(std::move(label)) {
    std::sort(points_.begin(), points_.end(),
              [](const TimePoint& a, const TimePoint& b) { return a.t < b.t; });
    validate_points(points_);
}

double TimeSeries::t_min() const {
    if (points_.empty()) throw ArgumentError("time series: t_min of an empty series");
    return points_.front().t;
}

double TimeSeries::t_max() const {
    if (points_.empty()) throw ArgumentError("time series: t_max of an empty series");
    return points_.back().t;
}

TimeSeries parse_csv(std::string_view text) {
    std::vector<TimePoint> points;
    std::map<double, long> seen; // year -> first line number, for duplicate reports
    std::string unit, label;
    bool header_allowed = true;

    long line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string_view stripped = trim(line);
        if (stripped.empty()) continue;

        if (stripped.front() == '#') {
            std::string_view body = trim(stripped.substr(1));
            if (body.rfind("unit:", 0) == 0)
                unit = std::string(trim(body.substr(5)));
            else if (body.rfind("label:", 0) == 0)
                label = std::string(trim(body.substr(6)));
            // other directives (# source:, # scale:, ...) are provenance comments
            continue;
        }

        std::size_t comma = stripped.find(',');
        if (comma == std::string_view::npos)
            throw ParseError("expected 'year,value'", line_no);
        std::string_view year_field = trim(stripped.substr(0, comma));
        std::string_view value_field = trim(stripped.substr(comma + 1));

        if (header_allowed && year_field == "year" && value_field == "value") {
            header_allowed = false;
            continue;
        }
        header_allowed = false;

        double t = 0.0, value = 0.0;
        if (!parse_number(year_field, t))
            throw ParseError("non-numeric year field '" + std::string(year_field) + "'", line_no);
        if (!parse_number(value_field, value))
            throw ParseError("non-numeric value field '" + std::string(value_field) + "'", line_no);
        if (!std::isfinite(t) || !std::isfinite(value))
            throw DomainError("non-finite number (line " + std::to_string(line_no) + ")");
        if (value <= 0.0)
            throw DomainError("value must be > 0, got " + std::string(value_field) + " (line " +
                              std::to_string(line_no) + ")");

        auto [it, inserted] = seen.emplace(t, line_no);
        if (!inserted)
            throw ParseError("duplicate year " + std::string(year_field) + " (first at line " +
                                 std::to_string(it->second) + ")",
                             line_no);
        points.push_back({t, value});
    }

    return TimeSeries(std::move(points), std::move(unit), std::move(label));
}

TimeSeries reciprocal(const TimeSeries& series) {
    std::vector<TimePoint> points;
    points.reserve(series.size());
    for (const auto& p : series.points()) points.push_back({p.t, 1.0 / p.value});
    return TimeSeries(std::move(points), detail::recip_unit(series.unit()), series.label());
}

TimeSeries slice(const TimeSeries& series, double t_min, double t_max) {
    if (t_min > t_max)
        throw ArgumentError("slice: t_min " + std::to_string(t_min) + " > t_max " +
                            std::to_string(t_max));
    std::vector<TimePoint> points;
    for (const auto& p : series.points())
        if (p.t >= t_min && p.t <= t_max) points.push_back(p);
    return TimeSeries(std::move(points), series.unit(), series.label());
}

TimeSeries exclude(const TimeSeries& series, const std::vector<double>& years) {
    std::vector<TimePoint> points;
    points.reserve(series.size());
    for (const auto& p : series.points())
        if (std::find(years.begin(), years.end(), p.t) == years.end()) points.push_back(p);
    return TimeSeries(std::move(points), series.unit(), series.label());
}

} // namespace recipgrowth
