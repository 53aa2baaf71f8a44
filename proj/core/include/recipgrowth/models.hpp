#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "recipgrowth/fit.hpp"

namespace recipgrowth {

/// Candidate trajectory families, identified by their reciprocal-space
/// signature: Hyperbolic1 is a decreasing straight line (a1 < 0),
/// DecreasingHyperbolic an increasing straight line (a1 > 0, value decays),
/// HyperbolicOrderK a degree-k polynomial (k >= 2), Exponential a decaying
/// exponential of the reciprocal.
enum class ModelFamily { hyperbolic1, decreasing_hyperbolic, hyperbolic_order_k, exponential };

struct ModelClass {
    ModelFamily family = ModelFamily::hyperbolic1;
    int order = 1; ///< reciprocal-polynomial degree: 1 for the line families,
                   ///< k for hyperbolic_order_k, 0 for exponential

    friend bool operator==(const ModelClass&, const ModelClass&) = default;
};

/// "Hyperbolic1", "DecreasingHyperbolic", "HyperbolicOrderK(k)", "Exponential".
std::string to_string(const ModelClass& m);

/// Least-squares polynomial of degree k through the reciprocal values:
/// 1/S(t) = c0 + c1*t + ... + ck*t^k.
struct PolyRecipFit {
    std::vector<double> coefficients; ///< c0..ck in the raw-t basis
    Window window;
    double sse_recip = 0.0;
    double bic = 0.0;
};

/// Exponential model S(t) = amplitude * exp(rate * t), fitted to the same
/// reciprocal-space objective as the other families: the reciprocal is
/// (1/amplitude) * exp(-rate * t).
struct ExpFit {
    double amplitude = 0.0;
    double rate = 0.0;
    Window window;
    double sse_recip = 0.0;
    double bic = 0.0;
    bool converged = false;
};

/// One scored candidate in a classification: the family, its BIC on the
/// shared reciprocal-space objective, and the fitted parameters (a0, a1 for
/// the line; c0..ck for polynomials; amplitude, rate for the exponential).
struct ScoredModel {
    ModelClass model;
    double bic = 0.0;
    double sse_recip = 0.0;
    std::vector<double> parameters;
};

/// Candidates sorted ascending by BIC. The winner is the lowest-BIC model,
/// except that any model within 2 BIC of the minimum loses to a competitor
/// with fewer parameters (prevents degree escalation on clean lines).
struct ClassificationResult {
    std::vector<ScoredModel> ranking;
    std::size_t winner_index = 0;

    const ScoredModel& winner() const { return ranking[winner_index]; }
};

/// Degree-k least-squares polynomial on reciprocal values (t centered and
/// scaled internally; coefficients reported in the raw-t basis). Requires
/// k >= 2 (ArgumentError; use fit_first_order for lines) and at least k+2
/// points (InsufficientDataError).
PolyRecipFit fit_poly_recip(const TimeSeries& series, int k);

/// Fit the exponential family: log-linear regression of ln(1/value) on t
/// for the initial estimate, then Gauss-Newton on the reciprocal-space SSE
/// (step-halving line search; converged when the relative SSE change drops
/// below 1e-12, capped at 100 iterations — the best iterate is returned
/// with converged = false if the cap is hit). Requires >= 3 points.
ExpFit fit_exponential(const TimeSeries& series);

/// Score the line family (labeled Hyperbolic1 or DecreasingHyperbolic by
/// the fitted slope sign), HyperbolicOrderK for k = 2..max_poly_degree, and
/// Exponential, all by BIC on the shared reciprocal-space SSE. Degrees
/// needing more points than available are skipped. Requires >= 5 points.
ClassificationResult classify(const TimeSeries& series, int max_poly_degree = 3);

/// Ratio of two first-order hyperbolic models, e.g. GDP over population:
/// a linearly modulated hyperbolic trajectory. value(t) =
/// numerator_value(t) / denominator_value(t) = (b0 + b1*t) / (A0 + A1*t)
/// where (A0, A1) is the numerator's reciprocal line and (b0, b1) the
/// denominator's.
struct RatioModel {
    HyperbolicFit numerator;
    HyperbolicFit denominator;
};

/// Evaluate the ratio at year t. Throws BeyondSingularityError, naming the
/// offending side, when either reciprocal line is <= 0 at t.
double ratio_value(const RatioModel& model, double t);

} // namespace recipgrowth
