#include "recipgrowth/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "recipgrowth/datasets.hpp"
#include "recipgrowth/report.hpp"

namespace recipgrowth {

namespace {

struct InputArgs {
    std::string file;
    std::string bundled;
    std::vector<double> window; // empty or {t_min, t_max}
    std::vector<double> excluded;
    std::string weighting = "uniform";
};

void add_input_options(CLI::App* cmd, InputArgs& in, bool with_weighting = true) {
    cmd->add_option("file", in.file, "CSV file with year,value rows");
    cmd->add_option("-b,--bundled", in.bundled,
                    "bundled dataset: world_population, africa_population, western_europe_gdp "
                    "or world_gdp");
    cmd->add_option("--window", in.window, "restrict the analysis to years A..B")
        ->expected(2);
    cmd->add_option("--exclude", in.excluded, "years to drop before fitting (comma separated)")
        ->delimiter(',');
    if (with_weighting)
        cmd->add_option("--weighting", in.weighting,
                        "residual weighting: uniform, value_squared or value_pow4");
}

TimeSeries read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_csv(buf.str());
}

TimeSeries load_input(const InputArgs& in) {
    if (in.file.empty() == in.bundled.empty())
        throw ArgumentError("provide exactly one input: a CSV file or --bundled NAME");
    return in.bundled.empty() ? read_file(in.file) : load_bundled(in.bundled);
}

TimeSeries apply_window_exclusions(const TimeSeries& s, const InputArgs& in) {
    TimeSeries out = in.window.empty() ? s : slice(s, in.window[0], in.window[1]);
    return in.excluded.empty() ? out : exclude(out, in.excluded);
}

Report base_report(const InputArgs& in, const TimeSeries& s) {
    Report r;
    r.title = s.label().empty() ? (in.bundled.empty() ? in.file : in.bundled) : s.label();
    r.dataset = in.bundled.empty() ? in.file : in.bundled;
    r.unit = s.unit();
    r.label = s.label();
    if (!in.window.empty()) r.window = Window{in.window[0], in.window[1]};
    r.exclusions = in.excluded;
    r.weighting = weighting_from_string(in.weighting);
    return r;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Growth-series analysis in reciprocal space: straight-line hyperbolic fits, "
                 "breakpoints, divergences, singularity times and model classification"};
    app.require_subcommand(1);

    InputArgs fit_in;
    CLI::App* fit_cmd = app.add_subcommand("fit", "fit one reciprocal-space line");
    add_input_options(fit_cmd, fit_in);

    InputArgs seg_in;
    int max_segments = 2, min_pts = 4;
    CLI::App* seg_cmd = app.add_subcommand("segment", "piecewise fit with BIC-selected breakpoints");
    add_input_options(seg_cmd, seg_in);
    seg_cmd->add_option("--max-segments", max_segments, "largest segment count to consider")
        ->check(CLI::PositiveNumber);
    seg_cmd->add_option("--min-pts", min_pts, "minimum samples per segment")
        ->check(CLI::PositiveNumber);

    InputArgs div_in;
    std::vector<double> baseline;
    DivergenceParams div_params;
    CLI::App* div_cmd =
        app.add_subcommand("diverge", "detect departure from a baseline hyperbolic trend");
    add_input_options(div_cmd, div_in);
    div_cmd->add_option("--baseline", baseline, "baseline fit window, years A B")
        ->expected(2)
        ->required();
    div_cmd->add_option("--z", div_params.z_threshold, "standardized-residual threshold");
    div_cmd->add_option("--min-run", div_params.min_run, "consecutive off-trend points required")
        ->check(CLI::PositiveNumber);

    InputArgs cls_in;
    int max_degree = 3;
    CLI::App* cls_cmd =
        app.add_subcommand("classify", "rank trajectory families by BIC in reciprocal space");
    add_input_options(cls_cmd, cls_in, /*with_weighting=*/false);
    cls_cmd->add_option("--max-degree", max_degree, "highest reciprocal-polynomial degree");

    std::string case_name, case_dataset;
    CLI::App* case_cmd =
        app.add_subcommand("case", "run a built-in case study and check its expected constants");
    case_cmd->add_option("name", case_name, "world_population, africa_population, "
                                            "western_europe_gdp or world_gdp")
        ->required();
    case_cmd->add_option("--dataset", case_dataset,
                         "CSV file to analyze instead of the bundled snapshot");

    InputArgs plot_in;
    std::string space_name = "reciprocal", svg_path;
    int grid_points = 200, plot_segments = 1, plot_min_pts = 4;
    CLI::App* plot_cmd =
        app.add_subcommand("plot", "emit observed-vs-model plot data as CSV (optionally SVG)");
    add_input_options(plot_cmd, plot_in);
    plot_cmd->add_option("--space", space_name, "direct or reciprocal")
        ->check(CLI::IsMember({"direct", "reciprocal"}));
    plot_cmd->add_option("--svg", svg_path, "also render the figure to this SVG file");
    plot_cmd->add_option("--grid", grid_points, "model grid points across the fit window");
    plot_cmd->add_option("--max-segments", plot_segments, "plot a segmented fit when > 1")
        ->check(CLI::PositiveNumber);
    plot_cmd->add_option("--min-pts", plot_min_pts, "minimum samples per segment");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help and friends
            out << (e.get_name() == "CallForAllHelp" ? app.help("", CLI::AppFormatMode::All)
                                                     : app.help());
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (fit_cmd->parsed()) {
            TimeSeries series = load_input(fit_in);
            TimeSeries data = apply_window_exclusions(series, fit_in);
            Report r = base_report(fit_in, series);
            r.fit = fit_first_order(data, {weighting_from_string(fit_in.weighting)});
            out << report_to_json(r) << "\n";
            return 0;
        }
        if (seg_cmd->parsed()) {
            TimeSeries series = load_input(seg_in);
            TimeSeries data = apply_window_exclusions(series, seg_in);
            Report r = base_report(seg_in, series);
            r.segmentation =
                fit_segmented(data, max_segments, min_pts, {weighting_from_string(seg_in.weighting)});
            out << report_to_json(r) << "\n";
            return 0;
        }
        if (div_cmd->parsed()) {
            TimeSeries series = load_input(div_in);
            TimeSeries data = apply_window_exclusions(series, div_in);
            Report r = base_report(div_in, series);
            r.divergence = detect_divergence(data, {baseline[0], baseline[1]}, div_params,
                                             {weighting_from_string(div_in.weighting)});
            out << report_to_json(r) << "\n";
            return 0;
        }
        if (cls_cmd->parsed()) {
            TimeSeries series = load_input(cls_in);
            TimeSeries data = apply_window_exclusions(series, cls_in);
            Report r = base_report(cls_in, series);
            r.classification = classify(data, max_degree);
            out << report_to_json(r) << "\n";
            return 0;
        }
        if (case_cmd->parsed()) {
            Report r = case_dataset.empty() ? run_case_study(case_name)
                                            : run_case_study(case_name, read_file(case_dataset));
            out << report_to_json(r) << "\n";
            return r.pass ? 0 : 1;
        }
        if (plot_cmd->parsed()) {
            TimeSeries series = load_input(plot_in);
            TimeSeries data = apply_window_exclusions(series, plot_in);
            Space space = space_name == "direct" ? Space::direct : Space::reciprocal;
            FitOptions options{weighting_from_string(plot_in.weighting)};

            PlotData plot;
            if (plot_segments > 1) {
                SegmentedFit seg = fit_segmented(data, plot_segments, plot_min_pts, options);
                plot = build_plot_data(series, seg, space, grid_points);
            } else {
                HyperbolicFit fit = fit_first_order(data, options);
                plot = build_plot_data(series, fit, space, grid_points);
            }
            out << emit_plot_data(plot);
            if (!svg_path.empty()) {
                std::string y_label = plot.unit.empty() ? to_string(space) : plot.unit;
                std::string svg = emit_svg(plot, "year", y_label);
                std::ofstream f(svg_path);
                if (!f) throw Error("cannot write SVG file '" + svg_path + "'");
                f << svg;
            }
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand given\n";
    return 2;
}

int cli_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_main(args, std::cout, std::cerr);
}

} // namespace recipgrowth
