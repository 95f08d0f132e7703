#include "flrw/fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flrw/errors.hpp"
#include "flrw/format.hpp"

namespace flrw {

FitResult fit_loglog(std::span<const double> eps, std::span<const double> T) {
    if (eps.size() != T.size()) {
        throw DegenerateInputError("fit: eps and T lengths differ");
    }
    if (eps.size() < kMinFitPoints) {
        throw DegenerateInputError("fit: need at least " + std::to_string(kMinFitPoints) +
                                   " points, got " + std::to_string(eps.size()));
    }
    std::vector<double> sorted(eps.begin(), eps.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DegenerateInputError("fit: repeated eps value makes the regression rank-deficient");
    }

    const std::size_t m = eps.size();
    std::vector<double> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(eps[i] > 0.0) || !(T[i] > 0.0)) {
            throw DegenerateInputError("fit: eps and T must be positive (eps=" +
                                       format_double(eps[i]) + ")");
        }
        x[i] = std::log(eps[i]);
        y[i] = std::log(T[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    fit.eps_values.assign(eps.begin(), eps.end());
    fit.T_values.assign(T.begin(), T.end());
    return fit;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        throw DegenerateInputError("log_grid needs 0 < lo < hi and n >= 2");
    }
    std::vector<double> out(n);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

}  // namespace flrw
