#include <gtest/gtest.h>

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <functional>
#include <random>

#include "flrw/errors.hpp"
#include "flrw/exponents.hpp"

using namespace flrw;

namespace {

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Independent evaluation of the gamma polynomial straight from its definition.
double gamma_oracle(int n, double p, double a, double mu) {
    return -p * p * (n - 1 + (mu - a) / (1 - a)) + p * (n + 1 + (mu + 3 * a) / (1 - a)) + 2;
}

double strauss_oracle(int n, double p) {
    return -(n - 1) * p * p + (n + 1) * p + 2;
}

// Positive root via textbook formula for c2 < 0 < c0.
double textbook_positive_root(double c2, double c1, double c0) {
    return (-c1 - std::sqrt(c1 * c1 - 4 * c2 * c0)) / (2 * c2);
}

double brent_root(const std::function<double(double)>& f, double lo, double hi) {
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return 0.5 * (a + b);
}

}  // namespace

TEST(Fujita, Examples) {
    EXPECT_DOUBLE_EQ(fujita(2.0), 2.0);
    EXPECT_DOUBLE_EQ(fujita(0.8), 3.5);
    EXPECT_DOUBLE_EQ(fujita(1.0), 3.0);
}

TEST(Fujita, RejectsNonpositiveDimension) {
    EXPECT_THROW(fujita(0.0), DomainError);
    EXPECT_THROW(fujita(-1.0), DomainError);
}

TEST(StraussQuadratic, Coefficients) {
    const auto q2 = strauss_quadratic(2);
    EXPECT_EQ(q2.c2, -1.0);
    EXPECT_EQ(q2.c1, 3.0);
    EXPECT_EQ(q2.c0, 2.0);
    const auto q3 = strauss_quadratic(3);
    EXPECT_EQ(q3.c2, -2.0);
    EXPECT_EQ(q3.c1, 4.0);
    EXPECT_EQ(q3.c0, 2.0);
    EXPECT_EQ(q2(1.0), 4.0);
}

TEST(StraussQuadratic, RejectsSmallDimension) {
    EXPECT_THROW(strauss_quadratic(1), DomainError);
}

TEST(PositiveRoot, KnownRoots) {
    const auto r3 = positive_root({-2, 4, 2});
    ASSERT_TRUE(r3.root);
    EXPECT_NEAR(*r3.root, 1 + std::sqrt(2.0), 1e-12);
    EXPECT_EQ(r3.kind, RootKind::two_real_one_positive);

    const auto r2 = positive_root({-1, 3, 2});
    ASSERT_TRUE(r2.root);
    EXPECT_NEAR(*r2.root, (3 + std::sqrt(17.0)) / 2, 1e-12);
}

TEST(PositiveRoot, NoPositiveRootMatchesSignScan) {
    const Quadratic q{0.5, 7.5, 2};
    const auto r = positive_root(q);
    EXPECT_FALSE(r.root);
    EXPECT_EQ(r.kind, RootKind::no_positive_root);
    EXPECT_TRUE(std::isinf(r.value_or_infinity()));
    for (int k = 1; k <= 100000; ++k) {
        ASSERT_GT(q(k * 1e-3), 0.0);
    }
}

TEST(PositiveRoot, LinearFallback) {
    const auto r = positive_root({0, 2, -4});
    ASSERT_TRUE(r.root);
    EXPECT_DOUBLE_EQ(*r.root, 2.0);
    EXPECT_EQ(r.kind, RootKind::degenerate_linear);
    EXPECT_FALSE(positive_root({0, 2, 4}).root);
}

TEST(PositiveRoot, AllZeroIsDegenerate) {
    EXPECT_THROW(positive_root({0, 0, 0}), DegenerateInputError);
}

TEST(PositiveRoot, SmallLeadingCoefficientKeepsPrecision) {
    const Quadratic q{-1e-12, 1.0, 1.0};
    const auto r = positive_root(q);
    ASSERT_TRUE(r.root);
    EXPECT_LT(std::abs(q(*r.root)) / (q.max_abs_coefficient() * *r.root * *r.root), 1e-10);
    EXPECT_NEAR(*r.root / 1e12, 1.0, 1e-9);
}

TEST(PositiveRoot, ResidualProperty) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> mag(-6.0, 3.0);
    for (int i = 0; i < 5000; ++i) {
        const Quadratic q{-std::pow(10.0, mag(rng)), std::pow(10.0, mag(rng)) * (i % 2 ? 1 : -1),
                          std::pow(10.0, mag(rng))};
        const auto r = positive_root(q);
        ASSERT_TRUE(r.root);
        ASSERT_GT(*r.root, 0.0);
        const double scale = q.max_abs_coefficient() * std::max(1.0, *r.root * *r.root);
        ASSERT_LT(std::abs(q(*r.root)) / scale, 1e-10) << i;
    }
}

TEST(Gamma, HandEvaluations) {
    EXPECT_NEAR(gamma({3, 0, 0}, 2.0), 2.0, 1e-14);
    EXPECT_NEAR(gamma({3, 0, 0}, 2.0), strauss_oracle(3, 2.0), 1e-14);
    EXPECT_NEAR(gamma({2, 0.6, 0}, 1.0), 10.0, 1e-12);
}

TEST(Gamma, GalstianYagdjianCoefficients) {
    for (int n = 2; n <= 6; ++n) {
        const auto q = gamma_quadratic({n, 2.0 / 3.0, 2.0});
        EXPECT_LT(rel_err(q.c2, -(n + 3.0)), 1e-12) << n;
        EXPECT_LT(rel_err(q.c1, n + 13.0), 1e-12) << n;
        EXPECT_EQ(q.c0, 2.0);
    }
}

TEST(Gamma, SingularAlpha) {
    EXPECT_THROW(gamma({2, 1.0, 0}, 2.0), SingularParameterError);
    EXPECT_THROW(ModelParams({2, 1.0, 0}).validate(), SingularParameterError);
}

TEST(Gamma, ReducesToStraussWithoutDampingAndSpeedDecay) {
    for (int n = 2; n <= 6; ++n) {
        for (int k = 0; k <= 40; ++k) {
            const double p = 1.0 + 0.1 * k;
            EXPECT_LT(rel_err(gamma({n, 0, 0}, p), strauss_oracle(n, p)), 1e-12);
        }
    }
}

TEST(Gamma, MatchesDefinitionOnGrid) {
    for (int n = 2; n <= 6; ++n) {
        for (double a : {0.0, 0.2, 0.5, 0.9}) {
            for (double mu : {0.0, 0.7, 2.0, 5.0}) {
                for (double p : {1.1, 2.0, 3.7}) {
                    EXPECT_LT(rel_err(gamma({n, a, mu}, p), gamma_oracle(n, p, a, mu)), 1e-12);
                }
            }
        }
    }
}

TEST(Pc, Examples) {
    EXPECT_NEAR(p_c({3, 0, 0}).value_or_infinity(), 2.414214, 1e-6);
    EXPECT_NEAR(p_c({3, 2.0 / 3.0, 2}).value_or_infinity(), textbook_positive_root(-6, 16, 2),
                1e-12);
    EXPECT_EQ(p_c({2, 0.6, 0}).kind, RootKind::no_positive_root);
}

TEST(Pc, RootResidualOnGrid) {
    for (int n = 2; n <= 6; ++n) {
        for (double a = 0.0; a < 0.99; a += 0.07) {
            for (double mu = 0.0; mu <= 4.0; mu += 0.25) {
                const ModelParams m{n, a, mu};
                const auto r = p_c(m);
                if (!r.root) continue;
                const auto q = gamma_quadratic(m);
                EXPECT_LT(std::abs(q(*r.root)) / (q.max_abs_coefficient() * std::max(1.0, *r.root * *r.root)),
                          1e-10);
            }
        }
    }
}

TEST(Gamma0, Examples) {
    EXPECT_NEAR(gamma0(3, 2.0, 1.0), 8.0 / 3.0, 1e-13);
    const auto r = p_c_flrw({3, 1.0});
    ASSERT_TRUE(r.root);
    EXPECT_NEAR(*r.root, textbook_positive_root(-2, 14.0 / 3.0, 4.0 / 3.0), 1e-12);
    EXPECT_NEAR(*r.root, 2.590667, 1e-6);
}

TEST(Gamma0, RejectsWBelowMinusOne) {
    EXPECT_THROW(gamma0(3, 2.0, -1.0), DomainError);
    EXPECT_THROW(gamma0(3, 2.0, -2.0), DomainError);
}

TEST(Gamma0, FactorizationIdentity) {
    for (int n = 2; n <= 6; ++n) {
        for (double w = 2.0 / n - 1 + 0.05; w <= 1.0 - 1e-9; w += 0.05) {
            const double a = 2.0 / (n * (1 + w));
            const double mu = 2.0 / (1 + w);
            for (double p = 0.5; p <= 5.0; p += 0.25) {
                const double lhs = gamma0(n, p, w);
                const double rhs = (1 - a) * gamma_oracle(n, p, a, mu);
                EXPECT_LT(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), 1e-12);
            }
        }
    }
}

TEST(Gamma0, ExceedsStraussAbovePEqualsOne) {
    // gamma0 - gamma_S = 4 (p - 1) / (n (1 + w)): positive exactly for p > 1.
    for (int n = 2; n <= 6; ++n) {
        for (double w = 2.0 / n - 1 + 0.05; w <= 1.0 - 1e-9; w += 0.05) {
            for (double p = 1.01; p <= 5.0; p += 0.01) {
                ASSERT_GT(gamma0(n, p, w) - strauss_oracle(n, p), 0.0);
            }
        }
    }
}

TEST(Gamma0, PcExceedsStraussExponent) {
    for (int n = 2; n <= 6; ++n) {
        const double pS = textbook_positive_root(-(n - 1.0), n + 1.0, 2.0);
        EXPECT_NEAR(strauss_exponent(n), pS, 1e-12);
        for (double w = 2.0 / n - 1 + 0.05; w <= 1.0 - 1e-9; w += 0.05) {
            EXPECT_GT(p_c_flrw({n, w}).value_or_infinity(), pS) << n << " " << w;
        }
    }
}

TEST(MuStar, Examples) {
    EXPECT_NEAR(mu_star(2, 0.6), 11.0 / 7.0, 1e-14);
    EXPECT_NEAR(gamma_oracle(2, 3.5, 0.6, 11.0 / 7.0), 0.0, 1e-12);
    EXPECT_NEAR(p_c({2, 0.6, mu_star(2, 0.6)}).value_or_infinity(), fujita(0.8), 1e-12);
}

TEST(MuStar, ExceedsOneOnFullGrid) {
    for (int n = 2; n <= 6; ++n) {
        for (int k = 0; k < 100; ++k) {
            EXPECT_GT(mu_star(n, k * 0.01), 1.0);
        }
    }
}

TEST(MuStar, CriticalCurvesMeet) {
    for (int n = 2; n <= 6; ++n) {
        for (double a : {0.0, 0.3, 0.6, 0.9}) {
            const double pc = p_c({n, a, mu_star(n, a)}).value_or_infinity();
            EXPECT_NEAR(pc, fujita(n * (1 - a)), 1e-10);
        }
    }
}

TEST(WStar, ThreeDimensions) {
    const auto w = w_star(3);
    ASSERT_TRUE(w);
    EXPECT_NEAR(*w, textbook_positive_root(-42, -24, 2), 1e-12);
    EXPECT_NEAR(*w, 0.073802, 1e-6);
    const double pF = fujita(3 - 2 / (1 + *w));
    EXPECT_LT(std::abs(pF - p_c_flrw({3, *w}).value_or_infinity()), 1e-8);
}

TEST(WStar, TwoDimensionsMatchesDirectRootFinding) {
    const auto w = w_star(2);
    ASSERT_TRUE(w);
    EXPECT_NEAR(*w, (-4 + std::sqrt(16.0 + 256.0)) / 32.0, 1e-12);
    const double direct = brent_root(
        [](double ww) { return fujita(2 - 2 / (1 + ww)) - p_c_flrw({2, ww}).value_or_infinity(); },
        0.05, 1.0);
    EXPECT_NEAR(*w, direct, 1e-9);
}

TEST(WStar, MatchesCrossingForHigherDimensions) {
    for (int n = 3; n <= 6; ++n) {
        const auto w = w_star(n);
        ASSERT_TRUE(w);
        const double lo = 2.0 / n - 1 + 1e-9;
        const auto f = [n](double ww) {
            return fujita(n - 2 / (1 + ww)) - p_c_flrw({n, ww}).value_or_infinity();
        };
        if (f(lo) * f(1.0) < 0) {
            EXPECT_NEAR(*w, brent_root(f, lo, 1.0), 1e-9) << n;
        }
    }
}

TEST(FlrwMap, Examples) {
    const auto m = flrw_to_model({3, 1.0 / 3.0});
    EXPECT_NEAR(m.alpha, 0.5, 1e-15);
    EXPECT_NEAR(m.mu, 1.5, 1e-15);
    const auto m1 = flrw_to_model({3, 1.0});
    EXPECT_NEAR(m1.alpha, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(m1.mu, 1.0, 1e-15);
}

TEST(FlrwMap, Identities) {
    for (int n = 2; n <= 6; ++n) {
        for (double w = 2.0 / n - 1 + 0.01; w <= 1.0 - 1e-9; w += 0.01) {
            const auto m = flrw_to_model({n, w});
            EXPECT_LT(rel_err(m.effective_dimension(), n - 2 / (1 + w)), 1e-12);
            EXPECT_GE(m.alpha, 1.0 / n - 1e-15);
            EXPECT_LT(m.alpha, 1.0);
            EXPECT_GE(m.mu, 1.0 - 1e-15);
        }
    }
}

TEST(FlrwMap, AdmissibleRange) {
    EXPECT_THROW(FlrwParams({3, -1.0 / 3.0}).validate(), DomainError);
    EXPECT_THROW(FlrwParams({3, 1.5}).validate(), DomainError);
    EXPECT_THROW(FlrwParams({1, 0.5}).validate(), DomainError);
    EXPECT_NO_THROW(FlrwParams({3, 1.0}).validate());
}

TEST(ModelParams, Validation) {
    EXPECT_THROW(ModelParams({1, 0, 0}).validate(), DomainError);
    EXPECT_THROW(ModelParams({2, -0.1, 0}).validate(), DomainError);
    EXPECT_THROW(ModelParams({2, 0.5, -1}).validate(), DomainError);
    EXPECT_NO_THROW(ModelParams({2, 0.0, 0.0}).validate());
}
