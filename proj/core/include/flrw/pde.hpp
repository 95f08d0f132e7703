#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flrw/exponents.hpp"
#include "flrw/fit.hpp"

namespace flrw {

enum class Profile { bump3 };

std::string_view to_string(Profile p);

/// (1 - (r/R)^2)^3 for r < R, else 0. C^2 across r = R.
double bump3(double r, double R);

/// Radially symmetric problem
///   u_tt - t^{-2 alpha} (u_rr + (n-1)/r u_r) + (mu/t) u_t = |u|^p,
///   u(1) = eps * profile, u_t(1) = eps * profile.
struct PdeConfig {
    ModelParams params{2, 0.5, 2.0};
    double p = 2.0;
    double eps = 0.5;
    double R = 1.0;
    Profile profile = Profile::bump3;
    double dr = 1.0 / 200.0;
    double cfl = 0.5;
    double blowup_threshold = 1e8;
    double t_max = 1e4;
    int margin_cells = 5;          // grid kept >= A(t) + R + margin_cells * dr
    double dt_cap = 0.1;
    double nonlinear_dt_factor = 0.05;  // dt <= factor * sup|u|^{-(p-1)/2}
    std::size_t sample_every = 20;      // diagnostics cadence in steps
    std::vector<double> snapshot_times;

    void validate() const;
};

/// A(t) = (t^{1-alpha} - 1) / (1 - alpha), the radius gained by the light cone since t = 1.
double cone_growth(double t, double alpha);

/// Two time levels on the uniform radial grid r_i = i * dr.
struct PdeState {
    double t = 1.0;
    double dt_prev = 0.0;  // 0 before the first step
    std::size_t step_index = 0;
    std::vector<double> u_prev;
    std::vector<double> u;
};

/// u_rr + (n-1)/r u_r by second-order central differences; at r = 0 the
/// limit n u_rr with the ghost value u_{-1} = u_1; u = 0 beyond the last point.
/// Throws DegenerateInputError for fewer than 3 points.
void radial_laplacian(std::span<const double> u, double dr, int n, std::span<double> out);
std::vector<double> radial_laplacian(std::span<const double> u, double dr, int n);

PdeState initial_state(const PdeConfig& cfg);

/// Explicit three-level update with time-centered damping; the first call
/// uses a second-order Taylor start. Extends the grid ahead of the cone.
/// Returns the step taken.
double step(PdeState& state, const PdeConfig& cfg);

/// sigma_{n-1} sum u_i r_i^{n-1} dr (trapezoid); sigma_{n-1} = 2 pi^{n/2} / Gamma(n/2).
double functional_F(std::span<const double> u, double dr, int n);

/// Same quadrature applied to |u|^p.
double nonlinear_mass(std::span<const double> u, double dr, int n, double p);

double sphere_area(int n);  // sigma_{n-1}
double ball_volume(int n);  // omega_n

/// max{ r_i : |u_i| > rel * sup|u| }, 0 for the zero function.
double support_radius(std::span<const double> u, double dr, double rel = 1e-12);

/// Support radius <= A(t) + R + 2 dr.
bool support_check(const PdeState& state, const PdeConfig& cfg);

/// (int |u|^p) * (omega_n rho^n)^{p-1} / F^p with rho = A(t) + R unless
/// overridden. Hoelder's inequality makes this >= 1 whenever supp u lies
/// inside the ball of radius rho.
double holder_ratio(const PdeState& state, const PdeConfig& cfg,
                    std::optional<double> radius = std::nullopt);

/// holder_ratio >= 1 - tol.
bool holder_check(const PdeState& state, const PdeConfig& cfg,
                  std::optional<double> radius = std::nullopt, double tol = 1e-6);

struct PdeSample {
    double t = 0.0;
    double sup = 0.0;
    double F = 0.0;
    double Lp = 0.0;
    double support_radius = 0.0;
    bool support_ok = true;
    bool holder_ok = true;
};

struct PdeSnapshot {
    double t = 0.0;
    double dr = 0.0;
    std::vector<double> u;
};

enum class PdeTermination { threshold, horizon, overflow };

std::string_view to_string(PdeTermination t);

struct PdeResult {
    bool blew_up = false;
    double T_num = 0.0;
    PdeTermination termination = PdeTermination::horizon;
    std::vector<PdeSample> samples;
    std::vector<PdeSnapshot> snapshots;
    std::size_t steps = 0;

    bool all_support_ok() const;
    bool all_holder_ok() const;
    /// F_k >= F_{k-1} - slack * F_0 at every sample, and F > 0 throughout.
    bool F_nondecreasing(double slack = 1e-8) const;
};

PdeResult run(const PdeConfig& cfg);

/// eps^p t^{-mu - n(1-alpha)(p-1)} (t-1)^{mu+2}.
double envelope_profile(const PdeConfig& cfg, double t);

struct EnvelopeCheck {
    double calibration_t = 0.0;
    double calibrated_c = 0.0;
    double min_ratio = 0.0;  // min over samples t >= calibration_t of F / envelope_profile
    double min_ratio_t = 0.0;
    bool holds = false;      // min_ratio >= calibrated_c
};

/// Calibrates c = F / envelope_profile at the first sample past from_t and
/// checks the ratio stays >= c at every later sample.
EnvelopeCheck envelope_check(const PdeResult& res, const PdeConfig& cfg, double from_t = 2.0);

struct PdeSweepRun {
    double eps = 0.0;
    PdeResult result;
    EnvelopeCheck envelope;
};

struct PdeSweep {
    std::vector<PdeSweepRun> runs;
    FitResult fit;
};

/// Concurrent runs over eps_grid; log-log fit of T_num; per-run envelope check.
PdeSweep lifespan_sweep(const PdeConfig& tmpl, const std::vector<double>& eps_grid);

/// Reference configuration (n=2, alpha=0.5, mu=2, p=2, eps=0.5, R=1, dr=1/200).
PdeConfig pde_preset(std::string_view name);
std::vector<double> pde_preset_eps_grid(std::string_view name);

/// CSV t,sup_u,F,Lp,support_radius.
std::string pde_diagnostics_csv(const PdeResult& res);

/// CSV r,u.
std::string pde_snapshot_csv(const PdeSnapshot& snap);

}  // namespace flrw
