#pragma once

#include <span>
#include <vector>

namespace flrw {

/// Least-squares line log(T) = intercept + slope * log(eps).
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<double> eps_values;
    std::vector<double> T_values;
};

inline constexpr std::size_t kMinFitPoints = 4;

/// Throws DegenerateInputError for fewer than kMinFitPoints samples, repeated
/// or nonpositive values, or mismatched lengths.
FitResult fit_loglog(std::span<const double> eps, std::span<const double> T);

/// n points log-spaced on [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace flrw
