#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flrw/bounds.hpp"
#include "flrw/errors.hpp"
#include "flrw/pde.hpp"

using namespace flrw;

namespace {

std::vector<double> sample(double dr, double rmax, double (*f)(double)) {
    std::vector<double> u;
    for (std::size_t i = 0; i * dr <= rmax + 1e-12; ++i) u.push_back(f(i * dr));
    return u;
}

double bump_on_unit(double r) { return bump3(r, 1.0); }

// Radial Laplacian of (1 - r^2)^3 in dimension n, for r < 1.
double bump_laplacian(double r, int n) {
    const double s = 1 - r * r;
    return -6 * s * s + 24 * r * r * s - 6 * (n - 1) * s * s;
}

// Largest |u| outside the light-cone ball, relative to sup |u|.
double leakage(const PdeState& s, const PdeConfig& cfg) {
    const double edge = cone_growth(s.t, cfg.params.alpha) + cfg.R + 2 * cfg.dr;
    double sup = 0, out = 0;
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        sup = std::max(sup, std::abs(s.u[i]));
        if (i * cfg.dr > edge) out = std::max(out, std::abs(s.u[i]));
    }
    return sup > 0 ? out / sup : 0.0;
}

void advance_to(PdeState& s, const PdeConfig& cfg, double t) {
    while (s.t < t) step(s, cfg);
}

}  // namespace

TEST(Laplacian, QuadraticIsExact) {
    for (int n : {2, 3, 5}) {
        const double dr = 0.01;
        const auto u = sample(dr, 1.0, [](double r) { return r * r; });
        const auto lap = radial_laplacian(u, dr, n);
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            EXPECT_NEAR(lap[i], 2.0 * n, 1e-9) << "n=" << n << " i=" << i;
        }
    }
    const auto u = sample(0.01, 1.0, [](double r) { return r * r; });
    EXPECT_NEAR(radial_laplacian(u, 0.01, 2)[50], 4.0, 1e-9);
}

TEST(Laplacian, ConstantGivesZeroInside) {
    const std::vector<double> u(50, 3.0);
    const auto lap = radial_laplacian(u, 0.1, 3);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) EXPECT_NEAR(lap[i], 0.0, 1e-12);
}

TEST(Laplacian, TooFewPoints) {
    const std::vector<double> u(2, 1.0);
    EXPECT_THROW(radial_laplacian(u, 0.1, 2), DegenerateInputError);
}

TEST(Laplacian, SecondOrderOnBump) {
    auto max_err = [](double dr) {
        const auto u = sample(dr, 1.2, bump_on_unit);
        const auto lap = radial_laplacian(u, dr, 3);
        double e = 0;
        for (std::size_t i = 0; i * dr <= 0.9; ++i) {
            e = std::max(e, std::abs(lap[i] - bump_laplacian(i * dr, 3)));
        }
        return e;
    };
    const double e1 = max_err(0.02), e2 = max_err(0.01), e3 = max_err(0.005);
    EXPECT_NEAR(e1 / e2, 4.0, 0.4);
    EXPECT_NEAR(e2 / e3, 4.0, 0.4);
}

TEST(Quadrature, BumpIntegralInTwoDimensions) {
    const double dr = 1.0 / 2000;
    const auto u = sample(dr, 1.0, bump_on_unit);
    EXPECT_NEAR(functional_F(u, dr, 2), std::numbers::pi / 4, 1e-6);
    EXPECT_NEAR(sphere_area(2), 2 * std::numbers::pi, 1e-14);
    EXPECT_NEAR(sphere_area(3), 4 * std::numbers::pi, 1e-14);
    EXPECT_NEAR(ball_volume(3), 4 * std::numbers::pi / 3, 1e-14);
}

TEST(Holder, EqualityForConstantOnBall) {
    PdeConfig cfg;
    cfg.params = {2, 0.5, 2.0};
    cfg.dr = 1.0 / 200;
    PdeState s;
    s.t = 1.0;
    s.u.assign(201, 1.0);  // u = 1 on [0, R] with R = A(1) + 1 = 1
    s.u_prev = s.u;
    EXPECT_NEAR(holder_ratio(s, cfg), 1.0, 1e-4);
    EXPECT_TRUE(holder_check(s, cfg, std::nullopt, 1e-4));
    EXPECT_NEAR(holder_ratio(s, cfg, 0.5), 0.25, 1e-4);
    EXPECT_FALSE(holder_check(s, cfg, 0.5));
}

TEST(Cone, GrowthProperties) {
    EXPECT_DOUBLE_EQ(cone_growth(1.0, 0.3), 0.0);
    EXPECT_NEAR(cone_growth(5.0, 0.0), 4.0, 1e-14);
    for (double t : {1.5, 3.0, 10.0, 100.0}) {
        double prev = INFINITY;
        for (double a = 0.0; a < 0.95; a += 0.1) {
            const double A = cone_growth(t, a);
            EXPECT_LT(A, prev);
            prev = A;
        }
    }
}

TEST(Step, ZeroDataStaysZero) {
    auto cfg = pde_preset("heatlike-n2");
    cfg.eps = 0.0;
    auto s = initial_state(cfg);
    for (int k = 0; k < 200; ++k) step(s, cfg);
    for (double v : s.u) ASSERT_EQ(v, 0.0);
}

TEST(Step, TaylorStart) {
    const auto cfg = pde_preset("heatlike-n2");
    auto s = initial_state(cfg);
    std::vector<double> u0 = s.u;
    const double dt = step(s, cfg);
    EXPECT_EQ(s.step_index, 1u);
    EXPECT_DOUBLE_EQ(s.t, 1.0 + dt);
    u0.resize(s.u.size(), 0.0);
    const auto lap = radial_laplacian(u0, cfg.dr, cfg.params.n);
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        const double u1 = cfg.eps * bump3(i * cfg.dr, cfg.R);
        const double utt = lap[i] - cfg.params.mu * u1 + std::pow(std::abs(u0[i]), cfg.p);
        const double expected = u0[i] + dt * u1 + 0.5 * dt * dt * utt;
        ASSERT_NEAR(s.u[i], expected, 1e-14) << "i=" << i;
    }
}

TEST(Step, LinearEnergyIsConserved) {
    // alpha = mu = 0 and data small enough that |u|^p is below round-off.
    PdeConfig cfg;
    cfg.params = {2, 0.0, 0.0};
    cfg.eps = 1e-9;
    cfg.dr = 1.0 / 200;
    cfg.cfl = 0.5;
    auto s = initial_state(cfg);
    step(s, cfg);
    auto energy = [&](const PdeState& st) {
        const double dt = st.dt_prev;
        double e = 0;
        for (std::size_t i = 0; i + 1 < st.u.size(); ++i) {
            const double r = i * cfg.dr, rh = r + 0.5 * cfg.dr;
            const double ut = (st.u[i] - st.u_prev[i]) / dt;
            const double g1 = (st.u[i + 1] - st.u[i]) / cfg.dr;
            const double g0 = (st.u_prev[i + 1] - st.u_prev[i]) / cfg.dr;
            e += 0.5 * (ut * ut * r + g1 * g0 * rh) * cfg.dr;
        }
        return e;
    };
    const double e0 = energy(s);
    double worst = 0;
    while (s.t < 10) {
        step(s, cfg);
        worst = std::max(worst, std::abs(energy(s) - e0) / e0);
    }
    EXPECT_LT(worst, 0.01);
}

TEST(Support, InitialDataInsideBall) {
    const auto cfg = pde_preset("heatlike-n2");
    const auto s = initial_state(cfg);
    EXPECT_TRUE(support_check(s, cfg));
    EXPECT_LE(support_radius(s.u, cfg.dr), cfg.R);
    EXPECT_EQ(support_radius(std::vector<double>(10, 0.0), 0.1), 0.0);
}

TEST(Support, LeakageShrinksWithRefinement) {
    auto cfg = pde_preset("heatlike-n2");
    double prev = INFINITY;
    for (double dr : {1.0 / 100, 1.0 / 200, 1.0 / 400}) {
        cfg.dr = dr;
        auto s = initial_state(cfg);
        advance_to(s, cfg, 3.0);
        const double l = leakage(s, cfg);
        EXPECT_LT(l, prev / 2) << "dr=" << dr;
        prev = l;
    }
}

TEST(Support, ReferenceRunStaysInsideCone) {
    const auto res = run(pde_preset("heatlike-n2"));
    ASSERT_TRUE(res.blew_up);
    EXPECT_TRUE(res.all_support_ok());
}

TEST(Run, ReferenceBlowsUpWithMonotoneF) {
    const auto cfg = pde_preset("heatlike-n2");
    const auto res = run(cfg);
    ASSERT_TRUE(res.blew_up);
    EXPECT_EQ(res.termination, PdeTermination::threshold);
    EXPECT_TRUE(res.all_holder_ok());
    EXPECT_TRUE(res.F_nondecreasing());
    EXPECT_GT(res.T_num, 1.0);
    EXPECT_LT(res.T_num, cfg.t_max);
}

TEST(Run, SmallerDataLivesLonger) {
    auto cfg = pde_preset("heatlike-n2");
    const double T_ref = run(cfg).T_num;
    cfg.eps = 0.25;
    const auto res = run(cfg);
    ASSERT_TRUE(res.blew_up);
    EXPECT_GT(res.T_num, T_ref);
}

TEST(Run, RefinementChangesLifespanLittle) {
    auto cfg = pde_preset("heatlike-n2");
    const double T1 = run(cfg).T_num;
    cfg.dr /= 2;
    const double T2 = run(cfg).T_num;
    EXPECT_LT(std::abs(T1 - T2) / T2, 0.1);
}

TEST(Run, ZeroDataHitsHorizon) {
    auto cfg = pde_preset("heatlike-n2");
    cfg.eps = 0;
    cfg.t_max = 5;
    const auto res = run(cfg);
    EXPECT_FALSE(res.blew_up);
    EXPECT_EQ(res.termination, PdeTermination::horizon);
}

TEST(Run, SnapshotsAndDiagnostics) {
    auto cfg = pde_preset("heatlike-n2");
    cfg.snapshot_times = {1.0, 2.0, 5.0};
    const auto res = run(cfg);
    ASSERT_EQ(res.snapshots.size(), 3u);
    EXPECT_DOUBLE_EQ(res.snapshots[0].t, 1.0);
    EXPECT_GE(res.snapshots[2].t, 5.0);
    const auto csv = pde_diagnostics_csv(res);
    EXPECT_EQ(csv.rfind("t,sup_u,F,Lp,support_radius\n", 0), 0u);
    EXPECT_EQ(pde_snapshot_csv(res.snapshots[0]).rfind("r,u\n", 0), 0u);
    EXPECT_EQ(csv, pde_diagnostics_csv(run(cfg)));
}

TEST(Sweep, LifespanScaling) {
    const auto cfg = pde_preset("heatlike-n2");
    const auto grid = pde_preset_eps_grid("heatlike-n2");
    const auto sw = lifespan_sweep(cfg, grid);
    const double predicted = -heatlike_exponent(cfg.params, cfg.p).eps_exponent;
    EXPECT_LT(std::abs(sw.fit.slope - predicted) / std::abs(predicted), 0.3) << sw.fit.slope;
    for (std::size_t i = 1; i < sw.runs.size(); ++i) {
        EXPECT_LT(sw.runs[i].result.T_num, sw.runs[i - 1].result.T_num);
    }
}

TEST(Sweep, EnvelopeLowerBoundHoldsAfterCalibration) {
    const auto cfg = pde_preset("heatlike-n2");
    const auto res = run(cfg);
    const auto env = envelope_check(res, cfg);
    EXPECT_GT(env.calibration_t, 2.0);
    EXPECT_TRUE(env.holds) << "min ratio " << env.min_ratio << " at t=" << env.min_ratio_t
                           << " vs calibrated " << env.calibrated_c;
}

TEST(Sweep, SinglePointFitRejected) {
    EXPECT_THROW(lifespan_sweep(pde_preset("heatlike-n2"), {0.5}), DegenerateInputError);
}

TEST(Config, Validation) {
    auto cfg = pde_preset("heatlike-n2");
    cfg.cfl = 1.0;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg = pde_preset("heatlike-n2");
    cfg.dr = 2.0;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg = pde_preset("heatlike-n2");
    cfg.margin_cells = 1;
    EXPECT_THROW(cfg.validate(), DomainError);
    EXPECT_THROW(pde_preset("nope"), DomainError);
}
