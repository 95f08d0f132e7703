#pragma once

#include <optional>
#include <string_view>

namespace flrw {

/// Parameters of the damped wave problem
///   u_tt - t^{-2 alpha} Δu + (mu / t) u_t = |u|^p,  t > 1,  x in R^n.
struct ModelParams {
    int n = 2;
    double alpha = 0.0;
    double mu = 0.0;

    /// Throws DomainError unless n >= 2, 0 <= alpha < 1, mu >= 0
    /// (SingularParameterError for alpha == 1).
    void validate() const;

    /// Effective heat dimension n(1 - alpha).
    double effective_dimension() const { return n * (1.0 - alpha); }
};

/// FLRW background with scale factor a(t) ~ t^{2/(n(1+w))}.
struct FlrwParams {
    int n = 3;
    double w = 1.0;

    /// Throws DomainError unless n >= 2 and 2/n - 1 < w <= 1.
    void validate() const;

    double scale_factor_exponent() const { return 2.0 / (n * (1.0 + w)); }
};

/// c2 p^2 + c1 p + c0.
struct Quadratic {
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    double operator()(double p) const { return (c2 * p + c1) * p + c0; }
    double max_abs_coefficient() const;
};

enum class RootKind {
    two_real_one_positive,
    degenerate_linear,
    no_positive_root,
};

std::string_view to_string(RootKind kind);

struct RootReport {
    std::optional<double> root;
    RootKind kind = RootKind::no_positive_root;

    /// The root, or +inf when none exists. A missing root means the
    /// quadratic stays positive on p > 0, so it imposes no upper limit.
    double value_or_infinity() const;
};

/// p_F(d) = 1 + 2/d for real d > 0.
double fujita(double d);

/// -(n-1) p^2 + (n+1) p + 2.
Quadratic strauss_quadratic(int n);

/// Strauss exponent p_S(n).
double strauss_exponent(int n);

/// First positive zero of q on p > 0.
///
/// Uses the cancellation-safe form: the larger-magnitude root is computed
/// from -(c1 + sign(c1) sqrt(D)) / 2 and the other one as c0 / (c2 * root).
/// A linear fallback covers c2 == 0. Throws DegenerateInputError when all
/// coefficients vanish.
RootReport positive_root(const Quadratic& q);

/// Coefficients of gamma(n, ., alpha, mu).
Quadratic gamma_quadratic(const ModelParams& params);

/// gamma(n, p, alpha, mu) = -p^2 (n-1 + (mu-alpha)/(1-alpha))
///                          + p (n+1 + (mu+3 alpha)/(1-alpha)) + 2
double gamma(const ModelParams& params, double p);

/// Positive root of gamma(n, ., alpha, mu).
RootReport p_c(const ModelParams& params);

/// -(n-1) p^2 + (n+1+4/(n(1+w))) p + 2 - 4/(n(1+w)).
Quadratic gamma0_quadratic(int n, double w);
double gamma0(int n, double p, double w);

/// Positive root of gamma0(n, ., w).
RootReport p_c_flrw(const FlrwParams& f);

/// Damping value at which p_c(n, alpha, mu) = p_F(n(1-alpha)).
double mu_star(int n, double alpha);

/// Coefficients of n(n^2+n+2) w^2 + 2n(n-1)^2 w + n^3 - 5n^2 + 8n - 8.
Quadratic w_star_quadratic(int n);

/// Larger root of w_star_quadratic(n); nullopt when the roots are complex.
std::optional<double> w_star(int n);

/// (n, w) -> (n, alpha = 2/(n(1+w)), mu = 2/(1+w)).
ModelParams flrw_to_model(const FlrwParams& f);

}  // namespace flrw
