#include "recipgrowth/models.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"

namespace recipgrowth {

namespace {

double polyval(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * x + coeffs[j];
    return acc;
}

double mean_abs_recip(const TimeSeries& series) {
    double s = 0.0;
    for (const auto& p : series.points()) s += std::abs(1.0 / p.value);
    return s / static_cast<double>(series.size());
}

// Convert a polynomial in u = (t - tc)/ts to the raw-t basis by expanding
// the binomials; degrees here are small so the O(k^2) loop is fine.
std::vector<double> to_raw_basis(const std::vector<double>& d, double tc, double ts) {
    std::vector<double> c(d.size(), 0.0);
    for (std::size_t j = 0; j < d.size(); ++j) {
        double scale = d[j] / std::pow(ts, static_cast<double>(j));
        // expand (t - tc)^j
        double binom = 1.0;
        for (std::size_t i = 0; i <= j; ++i) {
            c[i] += scale * binom * std::pow(-tc, static_cast<double>(j - i));
            binom = binom * static_cast<double>(j - i) / static_cast<double>(i + 1);
        }
    }
    return c;
}

} // namespace

std::string to_string(const ModelClass& m) {
    switch (m.family) {
        case ModelFamily::hyperbolic1: return "Hyperbolic1";
        case ModelFamily::decreasing_hyperbolic: return "DecreasingHyperbolic";
        case ModelFamily::hyperbolic_order_k: return "HyperbolicOrderK(" + std::to_string(m.order) + ")";
        case ModelFamily::exponential: return "Exponential";
    }
    throw ArgumentError("unknown model family");
}

PolyRecipFit fit_poly_recip(const TimeSeries& series, int k) {
    if (k < 2)
        throw ArgumentError("fit_poly_recip: degree must be >= 2; use fit_first_order for lines");
    const auto& pts = series.points();
    std::size_t n = pts.size();
    if (n < static_cast<std::size_t>(k) + 2)
        throw InsufficientDataError("fit_poly_recip: degree " + std::to_string(k) + " needs " +
                                    std::to_string(k + 2) + " points, got " + std::to_string(n));

    // Normal equations on centered/scaled years for conditioning.
    double tc = 0.0;
    for (const auto& p : pts) tc += p.t;
    tc /= static_cast<double>(n);
    double ts = std::max(1.0, (pts.back().t - pts.front().t) / 2.0);

    std::size_t dim = static_cast<std::size_t>(k) + 1;
    std::vector<std::vector<double>> gram(dim, std::vector<double>(dim, 0.0));
    std::vector<double> rhs(dim, 0.0);
    for (const auto& p : pts) {
        double u = (p.t - tc) / ts;
        double y = 1.0 / p.value;
        std::vector<double> pow(dim, 1.0);
        for (std::size_t j = 1; j < dim; ++j) pow[j] = pow[j - 1] * u;
        for (std::size_t a = 0; a < dim; ++a) {
            rhs[a] += pow[a] * y;
            for (std::size_t b = 0; b < dim; ++b) gram[a][b] += pow[a] * pow[b];
        }
    }
    std::vector<double> d = detail::solve_linear(std::move(gram), std::move(rhs));

    PolyRecipFit fit;
    fit.window = {pts.front().t, pts.back().t};
    for (const auto& p : pts) {
        double r = 1.0 / p.value - polyval(d, (p.t - tc) / ts);
        fit.sse_recip += r * r;
    }
    fit.coefficients = to_raw_basis(d, tc, ts);
    fit.bic = detail::bic_from_sse(fit.sse_recip, n, k + 1, mean_abs_recip(series));
    return fit;
}

ExpFit fit_exponential(const TimeSeries& series) {
    const auto& pts = series.points();
    std::size_t n = pts.size();
    if (n < 3)
        throw InsufficientDataError("fit_exponential: need at least 3 points, got " +
                                    std::to_string(n));

    // Reciprocal model exp(p + q*u) with u = t - tc. Log-linear regression
    // gives the starting point; Gauss-Newton then minimizes the same
    // reciprocal-space SSE the other families use, so BICs are comparable.
    double tc = 0.0;
    for (const auto& p : pts) tc += p.t;
    tc /= static_cast<double>(n);

    double su = 0.0, suu = 0.0, sl = 0.0, sul = 0.0;
    for (const auto& pt : pts) {
        double u = pt.t - tc;
        double l = std::log(1.0 / pt.value);
        su += u;
        suu += u * u;
        sl += l;
        sul += u * l;
    }
    double denom = static_cast<double>(n) * suu - su * su;
    if (denom == 0.0)
        throw DegenerateDesignError("fit_exponential: all sample years identical");
    double q = (static_cast<double>(n) * sul - su * sl) / denom;
    double p = (sl - q * su) / static_cast<double>(n);

    auto sse_at = [&](double pp, double qq) {
        double sse = 0.0;
        for (const auto& pt : pts) {
            double r = 1.0 / pt.value - std::exp(pp + qq * (pt.t - tc));
            sse += r * r;
        }
        return sse;
    };

    double sse = sse_at(p, q);
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
        // Gauss-Newton step: model m_i = exp(p + q u_i), Jacobian [m_i, u_i m_i].
        double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, jte0 = 0.0, jte1 = 0.0;
        for (const auto& pt : pts) {
            double u = pt.t - tc;
            double m = std::exp(p + q * u);
            double e = 1.0 / pt.value - m;
            jtj00 += m * m;
            jtj01 += u * m * m;
            jtj11 += u * u * m * m;
            jte0 += m * e;
            jte1 += u * m * e;
        }
        double det = jtj00 * jtj11 - jtj01 * jtj01;
        if (det == 0.0) break;
        double dp = (jtj11 * jte0 - jtj01 * jte1) / det;
        double dq = (jtj00 * jte1 - jtj01 * jte0) / det;

        double step = 1.0;
        double new_sse = sse_at(p + dp, q + dq);
        int halvings = 0;
        while (new_sse > sse && halvings < 30) {
            step *= 0.5;
            new_sse = sse_at(p + step * dp, q + step * dq);
            ++halvings;
        }
        if (new_sse > sse) {
            converged = true; // no descent direction left at this scale
            break;
        }
        p += step * dp;
        q += step * dq;
        double change = sse - new_sse;
        sse = new_sse;
        if (change <= 1e-12 * std::max(sse, 1e-300)) {
            converged = true;
            break;
        }
    }

    ExpFit fit;
    fit.rate = -q;
    fit.amplitude = std::exp(q * tc - p);
    fit.window = {pts.front().t, pts.back().t};
    fit.sse_recip = sse;
    fit.bic = detail::bic_from_sse(sse, n, 2, mean_abs_recip(series));
    fit.converged = converged;
    return fit;
}

ClassificationResult classify(const TimeSeries& series, int max_poly_degree) {
    const auto& pts = series.points();
    std::size_t n = pts.size();
    if (n < 5)
        throw InsufficientDataError("classify: need at least 5 points, got " + std::to_string(n));

    double scale = mean_abs_recip(series);
    std::vector<ScoredModel> candidates;

    // Straight reciprocal line; the slope sign decides which family it is.
    HyperbolicFit line = fit_first_order(series);
    double line_sse = 0.0;
    for (const auto& p : pts) {
        double r = 1.0 / p.value - (line.a0 + line.a1 * p.t);
        line_sse += r * r;
    }
    ScoredModel linear;
    linear.model = line.a1 > 0.0 ? ModelClass{ModelFamily::decreasing_hyperbolic, 1}
                                 : ModelClass{ModelFamily::hyperbolic1, 1};
    linear.bic = detail::bic_from_sse(line_sse, n, 2, scale);
    linear.sse_recip = line_sse;
    linear.parameters = {line.a0, line.a1};
    candidates.push_back(std::move(linear));

    for (int k = 2; k <= max_poly_degree; ++k) {
        if (n < static_cast<std::size_t>(k) + 2) break; // not enough points for this degree
        PolyRecipFit poly = fit_poly_recip(series, k);
        ScoredModel sm;
        sm.model = {ModelFamily::hyperbolic_order_k, k};
        sm.bic = poly.bic;
        sm.sse_recip = poly.sse_recip;
        sm.parameters = poly.coefficients;
        candidates.push_back(std::move(sm));
    }

    ExpFit exp_fit = fit_exponential(series);
    ScoredModel exp_sm;
    exp_sm.model = {ModelFamily::exponential, 0};
    exp_sm.bic = exp_fit.bic;
    exp_sm.sse_recip = exp_fit.sse_recip;
    exp_sm.parameters = {exp_fit.amplitude, exp_fit.rate};
    candidates.push_back(std::move(exp_sm));

    auto param_count = [](const ScoredModel& sm) { return sm.parameters.size(); };

    ClassificationResult result;
    result.ranking = std::move(candidates);
    std::stable_sort(result.ranking.begin(), result.ranking.end(),
                     [](const ScoredModel& a, const ScoredModel& b) { return a.bic < b.bic; });

    // Winner: lowest BIC, but anything within 2 of the minimum loses to a
    // simpler (fewer-parameter) contender.
    double min_bic = result.ranking.front().bic;
    std::size_t winner = 0;
    for (std::size_t i = 1; i < result.ranking.size(); ++i) {
        const ScoredModel& cand = result.ranking[i];
        if (cand.bic - min_bic < 2.0 && param_count(cand) < param_count(result.ranking[winner]))
            winner = i;
    }
    result.winner_index = winner;
    return result;
}

double ratio_value(const RatioModel& model, double t) {
    double num_line = model.numerator.a0 + model.numerator.a1 * t;
    double den_line = model.denominator.a0 + model.denominator.a1 * t;
    if (num_line <= 0.0)
        throw BeyondSingularityError("ratio_value: numerator line is nonpositive at t = " +
                                     std::to_string(t));
    if (den_line <= 0.0)
        throw BeyondSingularityError("ratio_value: denominator line is nonpositive at t = " +
                                     std::to_string(t));
    return den_line / num_line;
}

} // namespace recipgrowth
