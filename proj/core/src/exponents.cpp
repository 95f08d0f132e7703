#include "flrw/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "flrw/errors.hpp"

namespace flrw {

void ModelParams::validate() const {
    if (n < 2) {
        throw DomainError("n must be >= 2, got " + std::to_string(n));
    }
    if (alpha == 1.0) {
        throw SingularParameterError("alpha == 1 makes 1/(1-alpha) singular");
    }
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must satisfy 0 <= alpha < 1, got " + std::to_string(alpha));
    }
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw DomainError("mu must be a finite value >= 0, got " + std::to_string(mu));
    }
}

void FlrwParams::validate() const {
    if (n < 2) {
        throw DomainError("n must be >= 2, got " + std::to_string(n));
    }
    if (!(n * (1.0 + w) > 2.0 && w <= 1.0)) {
        throw DomainError("w must satisfy 2/n - 1 < w <= 1, got " + std::to_string(w));
    }
}

double Quadratic::max_abs_coefficient() const {
    return std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
}

std::string_view to_string(RootKind kind) {
    switch (kind) {
        case RootKind::two_real_one_positive: return "two_real_one_positive";
        case RootKind::degenerate_linear: return "degenerate_linear";
        case RootKind::no_positive_root: return "no_positive_root";
    }
    return "unknown";
}

double RootReport::value_or_infinity() const {
    return root ? *root : std::numeric_limits<double>::infinity();
}

double fujita(double d) {
    if (!(d > 0.0)) {
        throw DomainError("Fujita exponent needs d > 0, got " + std::to_string(d));
    }
    return 1.0 + 2.0 / d;
}

Quadratic strauss_quadratic(int n) {
    if (n < 2) {
        throw DomainError("Strauss quadratic needs n >= 2, got " + std::to_string(n));
    }
    return {-(n - 1.0), n + 1.0, 2.0};
}

double strauss_exponent(int n) {
    return *positive_root(strauss_quadratic(n)).root;
}

RootReport positive_root(const Quadratic& q) {
    if (q.c2 == 0.0 && q.c1 == 0.0 && q.c0 == 0.0) {
        throw DegenerateInputError("quadratic with all-zero coefficients");
    }
    if (q.c2 == 0.0) {
        if (q.c1 == 0.0) {
            return {std::nullopt, RootKind::no_positive_root};
        }
        const double r = -q.c0 / q.c1;
        if (r > 0.0) {
            return {r, RootKind::degenerate_linear};
        }
        return {std::nullopt, RootKind::no_positive_root};
    }

    const double disc = q.c1 * q.c1 - 4.0 * q.c2 * q.c0;
    if (disc < 0.0) {
        return {std::nullopt, RootKind::no_positive_root};
    }
    const double s = std::sqrt(disc);
    const double big = -0.5 * (q.c1 + std::copysign(s, q.c1));
    double r1 = big / q.c2;
    double r2 = big != 0.0 ? q.c0 / big : r1;
    if (r1 > r2) {
        std::swap(r1, r2);
    }
    // First sign change on p > 0.
    if (r1 > 0.0) {
        return {r1, RootKind::two_real_one_positive};
    }
    if (r2 > 0.0) {
        return {r2, RootKind::two_real_one_positive};
    }
    return {std::nullopt, RootKind::no_positive_root};
}

Quadratic gamma_quadratic(const ModelParams& params) {
    params.validate();
    const double n = params.n;
    const double a = params.alpha;
    const double mu = params.mu;
    const double inv = 1.0 / (1.0 - a);
    return {-(n - 1.0 + (mu - a) * inv), n + 1.0 + (mu + 3.0 * a) * inv, 2.0};
}

double gamma(const ModelParams& params, double p) {
    return gamma_quadratic(params)(p);
}

RootReport p_c(const ModelParams& params) {
    return positive_root(gamma_quadratic(params));
}

Quadratic gamma0_quadratic(int n, double w) {
    if (n < 2) {
        throw DomainError("gamma0 needs n >= 2, got " + std::to_string(n));
    }
    if (!(w > -1.0)) {
        throw DomainError("gamma0 needs w > -1, got " + std::to_string(w));
    }
    const double k = 4.0 / (n * (1.0 + w));
    return {-(n - 1.0), n + 1.0 + k, 2.0 - k};
}

double gamma0(int n, double p, double w) {
    return gamma0_quadratic(n, w)(p);
}

RootReport p_c_flrw(const FlrwParams& f) {
    f.validate();
    return positive_root(gamma0_quadratic(f.n, f.w));
}

double mu_star(int n, double alpha) {
    ModelParams{n, alpha, 0.0}.validate();
    const double b = 1.0 - alpha;
    const double nn = n;
    return (b * b * nn * nn + b * (1.0 + 2.0 * alpha) * nn + 2.0) / (nn * b + 2.0);
}

Quadratic w_star_quadratic(int n) {
    if (n < 2) {
        throw DomainError("w* needs n >= 2, got " + std::to_string(n));
    }
    const double nn = n;
    return {nn * (nn * nn + nn + 2.0), 2.0 * nn * (nn - 1.0) * (nn - 1.0),
            nn * nn * nn - 5.0 * nn * nn + 8.0 * nn - 8.0};
}

std::optional<double> w_star(int n) {
    const Quadratic q = w_star_quadratic(n);
    const double disc = q.c1 * q.c1 - 4.0 * q.c2 * q.c0;
    if (disc < 0.0) {
        return std::nullopt;
    }
    const double s = std::sqrt(disc);
    const double big = -0.5 * (q.c1 + std::copysign(s, q.c1));
    const double r1 = big / q.c2;
    const double r2 = big != 0.0 ? q.c0 / big : r1;
    return std::max(r1, r2);
}

ModelParams flrw_to_model(const FlrwParams& f) {
    f.validate();
    ModelParams m{f.n, 2.0 / (f.n * (1.0 + f.w)), 2.0 / (1.0 + f.w)};
    return m;
}

}  // namespace flrw
