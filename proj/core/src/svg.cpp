#include "recipgrowth/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace recipgrowth {

namespace {

constexpr double kWidth = 800.0, kHeight = 500.0;
constexpr double kLeft = 72.0, kRight = 28.0, kTop = 28.0, kBottom = 56.0;

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    double to_unit(double v) const { return (v - lo) / (hi - lo); }
};

Range padded(double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    double span = hi - lo;
    double pad = span > 0.0 ? 0.05 * span : std::max(1.0, std::abs(lo));
    return {lo - pad, hi + pad};
}

} // namespace

std::string emit_svg(const PlotData& data, const std::string& x_label, const std::string& y_label) {
    if (data.points.empty())
        throw ArgumentError("emit_svg: plot data has no points");

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& p : data.points) {
        x_min = std::min(x_min, p.t);
        x_max = std::max(x_max, p.t);
        for (const auto& v : {p.observed, p.model}) {
            if (!v) continue;
            y_min = std::min(y_min, *v);
            y_max = std::max(y_max, *v);
        }
    }
    if (y_min > y_max) { // all rows lacked values; keep a sane default axis
        y_min = 0.0;
        y_max = 1.0;
    }
    Range rx = padded(x_min, x_max);
    Range ry = padded(y_min, y_max);

    auto sx = [&](double t) { return kLeft + rx.to_unit(t) * (kWidth - kLeft - kRight); };
    auto sy = [&](double v) { return kTop + (1.0 - ry.to_unit(v)) * (kHeight - kTop - kBottom); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" fill=\"white\"/>\n";

    if (!data.label.empty())
        svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"18\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"14\">" +
               xml_escape(data.label) + "</text>\n";

    // axes
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" +
           num(kWidth - kRight) + "\" y2=\"" + num(kHeight - kBottom) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(kHeight - kBottom) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    const int ticks = 5;
    for (int i = 0; i < ticks; ++i) {
        double f = static_cast<double>(i) / (ticks - 1);
        double tx = rx.lo + f * (rx.hi - rx.lo);
        double px = sx(tx);
        svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" +
               num(px) + "\" y2=\"" + num(kHeight - kBottom + 5) +
               "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(px) + "\" y=\"" + num(kHeight - kBottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               xml_escape(tick_label(tx)) + "</text>\n";

        double ty = ry.lo + f * (ry.hi - ry.lo);
        double py = sy(ty);
        svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) +
               "\" y2=\"" + num(py) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
               xml_escape(tick_label(ty)) + "</text>\n";
    }

    svg += "<text x=\"" + num((kLeft + kWidth - kRight) / 2) + "\" y=\"" + num(kHeight - 14) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           xml_escape(x_label) + "</text>\n";
    svg += "<text x=\"16\" y=\"" + num((kTop + kHeight - kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 16 " +
           num((kTop + kHeight - kBottom) / 2) + ")\">" + xml_escape(y_label) + "</text>\n";

    // model polyline, split wherever the model is undefined
    std::string run;
    int run_points = 0;
    auto flush_run = [&] {
        if (run_points >= 2)
            svg += "<polyline points=\"" + run +
                   "\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\"/>\n";
        run.clear();
        run_points = 0;
    };
    for (const auto& p : data.points) {
        if (!p.model) {
            flush_run();
            continue;
        }
        if (!run.empty()) run += " ";
        run += num(sx(p.t)) + "," + num(sy(*p.model));
        ++run_points;
    }
    flush_run();

    for (const auto& p : data.points) {
        if (!p.observed) continue;
        svg += "<circle cx=\"" + num(sx(p.t)) + "\" cy=\"" + num(sy(*p.observed)) +
               "\" r=\"3\" fill=\"#c03020\"/>\n";
    }

    if (data.singularity && *data.singularity >= rx.lo && *data.singularity <= rx.hi) {
        double px = sx(*data.singularity);
        svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(kHeight - kBottom) +
               "\" stroke=\"#707070\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace recipgrowth
