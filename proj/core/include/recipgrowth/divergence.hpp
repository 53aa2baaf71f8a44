#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recipgrowth/fit.hpp"

namespace recipgrowth {

/// Direction of a departure from the baseline trajectory. In reciprocal
/// space, residuals above the line (positive) mean values below the model:
/// slower growth. Below the line means faster.
enum class Direction { slower, faster, none };

std::string to_string(Direction d);

struct DivergenceParams {
    double z_threshold = 2.0; ///< per-point |residual| / baseline rmse_recip needed to count
    int min_run = 3;          ///< consecutive qualifying same-signed points needed
};

struct DivergenceReport {
    Direction direction = Direction::none;
    std::optional<double> onset;  ///< first year of the detected run; absent iff direction == none
    int run_length = 0;           ///< length of the detected run (0 when none)
    double max_z = 0.0;           ///< largest standardized residual magnitude in the run (0 when none)
    HyperbolicFit baseline;       ///< the fit the residuals are measured against
};

/// Fit a baseline line on the samples inside baseline_window, then scan the
/// samples after the window for a terminal run (one that extends to the end
/// of the series) of at least min_run same-signed reciprocal residuals,
/// each standardized by the baseline rmse_recip to |z| > z_threshold. The
/// onset is the first year of that run. A departure must be ongoing to
/// count; transient dips followed by a return to trend report none.
///
/// Errors: fewer than 4 points in the window -> InsufficientDataError; no
/// samples after the window -> ArgumentError.
DivergenceReport detect_divergence(const TimeSeries& series, Window baseline_window,
                                   const DivergenceParams& params = {},
                                   const FitOptions& options = {});

/// Direction encoded by a same-signed residual run: positive -> slower,
/// negative -> faster. Throws ArgumentError if the run is empty or not
/// strictly same-signed (zeros count as sign breaks).
Direction divergence_sign_of(const std::vector<double>& residual_run);

} // namespace recipgrowth
