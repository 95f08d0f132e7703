#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flrw/fit.hpp"

namespace flrw {

/// Comparison ODE  F'' + (mu/t) F' = A1 (t+R)^{-q} |F|^p  from t = 1 with
/// F(1) = eps * F_init_scale, F'(1) = eps * dF_init_scale.
struct OdeConfig {
    double p = 2.0;
    double mu = 0.0;
    double q = 0.0;
    double A1 = 1.0;
    double R = 1.0;
    double F_init_scale = 1.0;
    double dF_init_scale = 1.0;
    double eps = 0.1;
    double blowup_threshold = 1e12;
    double t_max = 1e12;
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t trace_stride = 1;
    std::size_t max_steps = 20'000'000;

    void validate() const;
};

enum class OdeTermination { threshold, horizon, step_underflow };

std::string_view to_string(OdeTermination t);

struct OdeSample {
    double t = 0.0;
    double F = 0.0;
    double dF = 0.0;
};

struct OdeResult {
    bool blew_up = false;
    double T_num = 0.0;  // threshold crossing time, underflow time, or horizon
    std::vector<OdeSample> trace;
    OdeTermination termination = OdeTermination::horizon;
    std::size_t steps = 0;
};

/// Adaptive Dormand-Prince 5(4) integration with the threshold crossing
/// refined by bisection over a single step from the last accepted state.
/// A step below 1e-14 * t counts as blow-up (termination step_underflow).
OdeResult integrate(const OdeConfig& cfg);

/// t^mu F'(t) nondecreasing along the trace, with relative slack per step.
bool monotone_invariant_check(const OdeResult& res, double mu, double slack = 1e-8);

/// F strictly increasing along the trace.
bool strictly_increasing_F(const OdeResult& res);

struct SweepRun {
    double eps = 0.0;
    OdeResult result;
};

struct OdeSweep {
    std::vector<SweepRun> runs;  // in eps_grid order
    FitResult fit;
};

/// Runs every eps concurrently and fits log T against log eps. Throws
/// RunFailure naming each eps that reached the horizon.
OdeSweep sweep(const OdeConfig& tmpl, const std::vector<double>& eps_grid,
               bool keep_traces = true);

struct KatoConsistency {
    double K = 0.0;          // T(eps_max) * eps_max^{exponent}
    double exponent = 0.0;   // p(p-1)/M, so that T <= K eps^{-exponent}
    double worst_ratio = 0.0;  // max over runs of T / (K eps^{-exponent})
    bool holds = false;
};

/// Checks T(eps) <= K eps^{-exponent} for every run, K fitted at the largest eps.
KatoConsistency kato_consistency(const std::vector<double>& eps, const std::vector<double>& T,
                                 double exponent, double rel_slack = 1e-9);

/// Smallest second difference of log T over x = log(1/eps), after sorting by x.
double min_second_difference(const std::vector<double>& eps, const std::vector<double>& T);

struct OdePreset {
    std::string name;
    OdeConfig config;
    std::vector<double> eps_grid;
    int n = 2;
    double alpha = 0.0;
    std::optional<double> predicted_slope;  // heat-like presets only
};

/// "heatlike-n2" or "critical-n2".
OdePreset ode_preset(std::string_view name);

/// CSV t,F,dF.
std::string ode_trace_csv(const OdeResult& res);

/// CSV eps,T_num.
std::string sweep_csv(const std::vector<double>& eps, const std::vector<double>& T);

}  // namespace flrw
