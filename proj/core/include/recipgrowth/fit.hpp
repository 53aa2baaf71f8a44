#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recipgrowth/series.hpp"

namespace recipgrowth {

/// Residual weighting for the reciprocal-space least-squares objective.
///
/// Reciprocal space magnifies discrepancies at small values: a relative
/// error eps in value v produces a reciprocal residual of roughly eps/v, so
/// unweighted fitting is dominated by the earliest (smallest) samples.
/// - uniform: plain least squares on reciprocal values.
/// - value_squared: weight proportional to value^2; since a reciprocal
///   residual scales as (relative error)/value, this equalizes relative
///   errors, i.e. approximates least squares on log(value).
/// - value_pow4: weight proportional to value^4; since a value-space
///   residual is approximately value^2 times the reciprocal residual, this
///   is the first-order approximation of least squares in value space.
enum class Weighting { uniform, value_squared, value_pow4 };

std::string to_string(Weighting w);
Weighting weighting_from_string(std::string_view name);

struct FitOptions {
    Weighting weighting = Weighting::uniform;
};

/// Closed year interval, used for fit windows and baselines.
struct Window {
    double t_min = 0.0;
    double t_max = 0.0;
};

/// First-order hyperbolic model S(t) = 1/(a0 + a1*t), fitted as the straight
/// line a0 + a1*t through the reciprocal values. a1 < 0 means growth toward
/// a finite-time singularity at -a0/a1; a1 > 0 means decreasing values.
struct HyperbolicFit {
    double a0 = 0.0;   ///< reciprocal intercept at t = 0, unit 1/(value unit)
    double a1 = 0.0;   ///< reciprocal slope per year
    Window window;     ///< [min, max] year of the fitted samples
    int n = 0;         ///< sample count
    double rmse_recip = 0.0;  ///< unweighted RMS residual in reciprocal space
    double r2_recip = 0.0;    ///< coefficient of determination under the fit's weighting
    double rmse_direct = 0.0; ///< RMS residual in value space (NaN if the line is nonpositive at a fitted year)
};

/// Signed reciprocal-space residual at one year. Positive means the
/// reciprocal datum lies above the line, i.e. the value is below the model:
/// slower-than-model growth. Negative means faster.
struct Residual {
    double t = 0.0;
    double residual = 0.0;
};

/// Least-squares line through the reciprocal values. The regressor is
/// centered at its (weighted) mean year internally for conditioning; the
/// reported a0 refers to the t = 0 origin. Throws InsufficientDataError for
/// fewer than 2 points and DegenerateDesignError if all years coincide
/// (unreachable through TimeSeries, which forbids duplicate years).
HyperbolicFit fit_first_order(const TimeSeries& series, const FitOptions& options = {});

/// Model value (a0 + a1*t)^(-1). Throws BeyondSingularityError when the
/// line is <= 0 at t; the raw line value is available as fit.a0 + fit.a1*t.
double evaluate(const HyperbolicFit& fit, double t);

/// Year -a0/a1 where the reciprocal line crosses zero and the model value
/// diverges; nullopt when a1 >= 0 (no finite-time singularity).
std::optional<double> singularity_time(const HyperbolicFit& fit);

/// Relative growth rate S'(t)/S(t) = -a1 * S(t) per year. Same domain and
/// error behavior as evaluate.
double growth_rate(const HyperbolicFit& fit, double t);

/// Reciprocal-space residuals 1/value - (a0 + a1*t) of the series against
/// the fitted line, in series order. Throws ArgumentError on an empty series.
std::vector<Residual> residuals_recip(const HyperbolicFit& fit, const TimeSeries& series);

} // namespace recipgrowth
