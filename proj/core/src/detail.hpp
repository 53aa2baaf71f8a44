#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "recipgrowth/errors.hpp"
#include "recipgrowth/fit.hpp"
#include "recipgrowth/series.hpp"

namespace recipgrowth::detail {

// Core of the weighted reciprocal-space line fit on points[begin, end),
// shared by fit_first_order and the segmentation dynamic program so both
// see bit-identical coefficients and objective values. sse_obj is the
// weighted least-squares objective; sum_abs_y feeds the BIC floor scale.
struct LineCore {
    double a0 = 0.0;
    double a1 = 0.0;
    double sse_obj = 0.0;
    double sum_abs_y = 0.0;
};

LineCore line_core(const std::vector<TimePoint>& pts, std::size_t begin, std::size_t end,
                   Weighting weighting);

/// Per-point least-squares weight implied by a Weighting mode.
double weight_of(double value, Weighting weighting);

/// Unit label of a reciprocal quantity: "x" -> "1/(x)", unwrapping an
/// existing "1/(...)" so the mapping is an involution; empty stays empty.
std::string recip_unit(const std::string& unit);

// Noiseless fits leave SSE at rounding level; flooring keeps BIC finite and
// makes exactly-fitting nested models tie so the parameter penalty decides.
// `scale` should be the mean absolute reciprocal value of the fitted data.
inline double bic_floor(std::size_t n, double scale) {
    double eps = 1e-12 * scale;
    return static_cast<double>(n) * eps * eps;
}

inline double bic_from_sse(double sse, std::size_t n, int params, double scale) {
    double nd = static_cast<double>(n);
    double sse_eff = std::max(sse, bic_floor(n, scale));
    return nd * std::log(sse_eff / nd) + params * std::log(nd);
}

// Solve the square system a*x = b in place by Gaussian elimination with
// partial pivoting. Sized for the small normal-equation systems used here
// (at most degree+1 unknowns). Throws DegenerateDesignError on a zero pivot.
inline std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (a[pivot][col] == 0.0)
            throw DegenerateDesignError("linear solve: singular normal equations");
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            double f = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

} // namespace recipgrowth::detail
