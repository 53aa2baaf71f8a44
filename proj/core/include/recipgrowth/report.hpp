#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recipgrowth/divergence.hpp"
#include "recipgrowth/fit.hpp"
#include "recipgrowth/models.hpp"
#include "recipgrowth/segment.hpp"
#include "recipgrowth/series.hpp"

namespace recipgrowth {

/// Serialize a series back to CSV ("# label:" / "# unit:" directives when
/// non-empty, a year,value header, then one row per point with enough
/// digits to round-trip doubles exactly).
std::string to_csv(const TimeSeries& series);

/// Which representation a plot shows: raw values or their reciprocals.
enum class Space { direct, reciprocal };

std::string to_string(Space s);

/// One plot row. Rows exist at every observed year and on a dense model
/// grid; observed is absent on pure grid rows, and model is absent where
/// the model is undefined in the requested space (line at or past its
/// singularity in direct space).
struct PlotPoint {
    double t = 0.0;
    std::optional<double> observed;
    std::optional<double> model;
};

struct PlotData {
    Space space = Space::reciprocal;
    std::string unit;        ///< unit of the plotted quantity in the chosen space
    std::string label;       ///< series label
    std::vector<PlotPoint> points;
    std::optional<double> singularity; ///< model singularity year, when one exists
};

/// Tabulate observed samples and the fitted model in the requested space.
/// The model is sampled on grid_points evenly spaced years across the fit
/// window and additionally at every observed year (also outside the
/// window, which is how departures from an extended baseline are plotted).
/// Throws ArgumentError when the fit window and the series do not overlap.
PlotData build_plot_data(const TimeSeries& series, const HyperbolicFit& fit, Space space,
                         int grid_points = 200);

/// Same for a segmented fit: each year is assigned to the segment active
/// there (breakpoints mark where the next segment takes over); the grid
/// spans the full fitted range, and the singularity reported is the last
/// segment's.
PlotData build_plot_data(const TimeSeries& series, const SegmentedFit& seg, Space space,
                         int grid_points = 200);

/// CSV document "t,observed,model" for the plot rows; absent fields are
/// empty. The overloads taking a series and a fit are shorthand for
/// build_plot_data followed by this.
std::string emit_plot_data(const PlotData& data);
std::string emit_plot_data(const TimeSeries& series, const HyperbolicFit& fit, Space space,
                           int grid_points = 200);
std::string emit_plot_data(const TimeSeries& series, const SegmentedFit& seg, Space space,
                           int grid_points = 200);

/// Standalone SVG 1.1 figure: linear axes with ticks, observed points as
/// circle markers, the model as a polyline, and a vertical dashed line at
/// the singularity when it falls inside the horizontal range. Throws
/// ArgumentError when the plot data has no points.
std::string emit_svg(const PlotData& data, const std::string& x_label, const std::string& y_label);

/// One pass/fail row of a case-study report. Numeric checks carry a band
/// [lo, hi] and the actual value; categorical checks (divergence direction,
/// classification ordering) carry expected/actual text instead.
struct CheckRow {
    std::string name;
    bool numeric = true;
    double lo = 0.0;
    double hi = 0.0;
    double actual = 0.0;
    std::string expected_text;
    std::string actual_text;
    std::string unit;
    bool pass = false;
};

/// Analysis report: input echo plus whichever results the analysis plan
/// produced. Every numeric field is serialized with its unit by
/// report_to_json; schema_version identifies the JSON layout.
struct Report {
    int schema_version = 1;
    std::string title;
    std::string dataset;          ///< bundled id or file name
    std::string unit;             ///< value unit of the analyzed series
    std::string label;
    std::optional<Window> window; ///< analysis window, when one was applied
    std::vector<double> exclusions;
    Weighting weighting = Weighting::uniform;

    std::optional<HyperbolicFit> fit;
    std::optional<SegmentedFit> segmentation;
    std::optional<DivergenceReport> divergence;
    std::optional<ClassificationResult> classification;

    std::vector<CheckRow> checks; ///< empty for plain (non-case) analyses
    bool pass = true;             ///< all checks passed (vacuously true without checks)
};

/// JSON text for a report: versioned schema, numeric results wrapped as
/// {"value": ..., "unit": ...} objects, two-space indentation.
std::string report_to_json(const Report& report);

/// Names of the built-in case studies (same identifiers as the bundled
/// datasets they analyze).
const std::vector<std::string>& case_study_names();

/// Run a case study: executes its analysis plan (fit windows, exclusions,
/// weighting, segmentation / divergence / classification steps, all stored
/// as data in the case table) against the bundled dataset and checks the
/// results against the expected bands. Throws NotFoundError for an unknown
/// name. The second form runs the same plan against substitute data, e.g. a
/// fresh transcription of the underlying tables.
Report run_case_study(const std::string& name);
Report run_case_study(const std::string& name, const TimeSeries& data);

} // namespace recipgrowth
