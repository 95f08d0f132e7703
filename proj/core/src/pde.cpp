#include "flrw/pde.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

#include "flrw/errors.hpp"
#include "flrw/format.hpp"

namespace flrw {

std::string_view to_string(Profile) {
    return "bump3";
}

double bump3(double r, double R) {
    if (r >= R) {
        return 0.0;
    }
    const double s = 1.0 - (r / R) * (r / R);
    return s * s * s;
}

void PdeConfig::validate() const {
    params.validate();
    auto bad = [](const std::string& msg) { throw DomainError("pde config: " + msg); };
    if (!(p > 1.0)) bad("p must be > 1");
    if (!(eps >= 0.0)) bad("eps must be >= 0");
    if (!(R > 0.0)) bad("R must be > 0");
    if (!(dr > 0.0) || dr >= R) bad("dr must satisfy 0 < dr < R");
    if (!(cfl > 0.0 && cfl < 1.0)) bad("cfl must lie in (0, 1)");
    if (!(blowup_threshold > eps)) bad("blowup_threshold must exceed the data size");
    if (!(t_max > 1.0)) bad("t_max must exceed 1");
    if (margin_cells < 2) bad("margin_cells must be >= 2");
    if (!(dt_cap > 0.0) || !(nonlinear_dt_factor > 0.0)) bad("dt limits must be positive");
    if (sample_every == 0) bad("sample_every must be >= 1");
}

double cone_growth(double t, double alpha) {
    return (std::pow(t, 1.0 - alpha) - 1.0) / (1.0 - alpha);
}

void radial_laplacian(std::span<const double> u, double dr, int n, std::span<double> out) {
    const std::size_t N = u.size();
    if (N < 3) {
        throw DegenerateInputError("radial Laplacian needs at least 3 grid points");
    }
    if (n < 2) {
        throw DomainError("radial Laplacian needs n >= 2");
    }
    const double inv_dr2 = 1.0 / (dr * dr);
    const double nm1 = n - 1.0;
    out[0] = 2.0 * n * (u[1] - u[0]) * inv_dr2;
    for (std::size_t i = 1; i < N; ++i) {
        const double right = i + 1 < N ? u[i + 1] : 0.0;
        const double left = u[i - 1];
        const double drift = nm1 / (2.0 * static_cast<double>(i));
        out[i] = ((1.0 + drift) * right - 2.0 * u[i] + (1.0 - drift) * left) * inv_dr2;
    }
}

std::vector<double> radial_laplacian(std::span<const double> u, double dr, int n) {
    std::vector<double> out(u.size());
    radial_laplacian(u, dr, n, out);
    return out;
}

namespace {

inline double pow_abs(double v, double p) {
    const double a = std::abs(v);
    return p == 2.0 ? a * a : std::pow(a, p);
}

double sup_abs(std::span<const double> u) {
    double s = 0.0;
    for (double v : u) {
        s = std::max(s, std::abs(v));
    }
    return s;
}

// Radius where the grid must still hold zeros at time t.
std::size_t required_points(const PdeConfig& cfg, double t) {
    const double reach = cone_growth(t, cfg.params.alpha) + cfg.R + cfg.margin_cells * cfg.dr;
    return static_cast<std::size_t>(std::ceil(reach / cfg.dr)) + 2;
}

void ensure_grid(PdeState& s, const PdeConfig& cfg, double t) {
    const std::size_t need = required_points(cfg, t);
    if (s.u.size() < need) {
        s.u.resize(need, 0.0);
        s.u_prev.resize(need, 0.0);
    }
}

double choose_dt(const PdeState& s, const PdeConfig& cfg) {
    double dt = std::min(cfg.cfl * cfg.dr * std::pow(s.t, cfg.params.alpha), cfg.dt_cap);
    const double sup = sup_abs(s.u);
    if (sup > 0.0) {
        dt = std::min(dt, cfg.nonlinear_dt_factor * std::pow(sup, -(cfg.p - 1.0) / 2.0));
    }
    return dt;
}

template <typename Fn>
double radial_quadrature(std::span<const double> u, double dr, int n, Fn&& g) {
    // Trapezoid on [0, r_{N-1}]; the r = 0 node carries zero weight for n >= 2.
    const std::size_t N = u.size();
    double acc = 0.0;
    for (std::size_t i = 1; i < N; ++i) {
        const double r = static_cast<double>(i) * dr;
        const double w = i + 1 == N ? 0.5 : 1.0;
        acc += w * g(u[i]) * std::pow(r, n - 1);
    }
    return sphere_area(n) * acc * dr;
}

}  // namespace

double sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

double ball_volume(int n) {
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double functional_F(std::span<const double> u, double dr, int n) {
    return radial_quadrature(u, dr, n, [](double v) { return v; });
}

double nonlinear_mass(std::span<const double> u, double dr, int n, double p) {
    return radial_quadrature(u, dr, n, [p](double v) { return pow_abs(v, p); });
}

double support_radius(std::span<const double> u, double dr, double rel) {
    const double cut = rel * sup_abs(u);
    for (std::size_t i = u.size(); i-- > 0;) {
        if (std::abs(u[i]) > cut) {
            return static_cast<double>(i) * dr;
        }
    }
    return 0.0;
}

PdeState initial_state(const PdeConfig& cfg) {
    cfg.validate();
    PdeState s;
    s.t = 1.0;
    ensure_grid(s, cfg, 1.0);
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        s.u[i] = cfg.eps * bump3(static_cast<double>(i) * cfg.dr, cfg.R);
    }
    s.u_prev = s.u;
    return s;
}

double step(PdeState& s, const PdeConfig& cfg) {
    const double dt = choose_dt(s, cfg);
    ensure_grid(s, cfg, s.t + dt);
    const std::size_t N = s.u.size();
    const int n = cfg.params.n;
    const double mu = cfg.params.mu;
    const double speed2 = std::pow(s.t, -2.0 * cfg.params.alpha);
    const std::vector<double> lap = radial_laplacian(s.u, cfg.dr, n);
    std::vector<double> next(N);

    if (s.step_index == 0) {
        // u^1 = u^0 + dt u_t + dt^2/2 u_tt, with u_tt taken from the equation at t = 1.
        for (std::size_t i = 0; i < N; ++i) {
            const double ut = cfg.eps * bump3(static_cast<double>(i) * cfg.dr, cfg.R);
            const double utt = speed2 * lap[i] - mu * ut + pow_abs(s.u[i], cfg.p);
            next[i] = s.u[i] + dt * ut + 0.5 * dt * dt * utt;
        }
    } else {
        const double hm = s.dt_prev;
        const double hp = dt;
        const double damp = mu / s.t;
        const double lead = 2.0 / hp + damp;
        const double mid = 2.0 * (1.0 / hp + 1.0 / hm);
        const double back = 2.0 / hm - damp;
        const double span = hp + hm;
        for (std::size_t i = 0; i < N; ++i) {
            const double rhs = speed2 * lap[i] + pow_abs(s.u[i], cfg.p);
            next[i] = (span * rhs + mid * s.u[i] - back * s.u_prev[i]) / lead;
        }
    }
    next[N - 1] = 0.0;

    s.u_prev = std::move(s.u);
    s.u = std::move(next);
    s.t += dt;
    s.dt_prev = dt;
    ++s.step_index;
    return dt;
}

bool support_check(const PdeState& s, const PdeConfig& cfg) {
    const double limit = cone_growth(s.t, cfg.params.alpha) + cfg.R + 2.0 * cfg.dr;
    return support_radius(s.u, cfg.dr) <= limit;
}

double holder_ratio(const PdeState& s, const PdeConfig& cfg, std::optional<double> radius) {
    const int n = cfg.params.n;
    const double rho = radius ? *radius : cone_growth(s.t, cfg.params.alpha) + cfg.R;
    const double F = functional_F(s.u, cfg.dr, n);
    const double Lp = nonlinear_mass(s.u, cfg.dr, n, cfg.p);
    const double vol = ball_volume(n) * std::pow(rho, n);
    const double Fp = std::pow(std::abs(F), cfg.p);
    if (Fp == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return Lp * std::pow(vol, cfg.p - 1.0) / Fp;
}

bool holder_check(const PdeState& s, const PdeConfig& cfg, std::optional<double> radius,
                  double tol) {
    return holder_ratio(s, cfg, radius) >= 1.0 - tol;
}

std::string_view to_string(PdeTermination t) {
    switch (t) {
        case PdeTermination::threshold: return "threshold";
        case PdeTermination::horizon: return "horizon";
        case PdeTermination::overflow: return "overflow";
    }
    return "horizon";
}

bool PdeResult::all_support_ok() const {
    return std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.support_ok; });
}

bool PdeResult::all_holder_ok() const {
    return std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.holder_ok; });
}

bool PdeResult::F_nondecreasing(double slack) const {
    if (samples.empty() || !(samples.front().F > 0.0)) {
        return false;
    }
    const double F1 = samples.front().F;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].F < samples[i - 1].F - slack * F1 || samples[i].F < F1 - slack * F1) {
            return false;
        }
    }
    return true;
}

namespace {

PdeSample diagnose(const PdeState& s, const PdeConfig& cfg) {
    PdeSample d;
    d.t = s.t;
    d.sup = sup_abs(s.u);
    d.F = functional_F(s.u, cfg.dr, cfg.params.n);
    d.Lp = nonlinear_mass(s.u, cfg.dr, cfg.params.n, cfg.p);
    d.support_radius = support_radius(s.u, cfg.dr);
    d.support_ok = support_check(s, cfg);
    d.holder_ok = d.F == 0.0 || holder_check(s, cfg);
    return d;
}

}  // namespace

PdeResult run(const PdeConfig& cfg) {
    PdeState s = initial_state(cfg);
    PdeResult res;
    res.samples.push_back(diagnose(s, cfg));

    std::vector<double> snaps = cfg.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    while (next_snap < snaps.size() && snaps[next_snap] <= s.t) {
        res.snapshots.push_back({s.t, cfg.dr, s.u});
        ++next_snap;
    }

    double sup_old = res.samples.front().sup;
    while (true) {
        const double t_old = s.t;
        step(s, cfg);
        ++res.steps;
        const double sup_new = sup_abs(s.u);

        if (!std::isfinite(sup_new)) {
            res.blew_up = true;
            res.T_num = t_old;
            res.termination = PdeTermination::overflow;
            break;
        }
        while (next_snap < snaps.size() && snaps[next_snap] <= s.t) {
            res.snapshots.push_back({s.t, cfg.dr, s.u});
            ++next_snap;
        }
        if (sup_new >= cfg.blowup_threshold) {
            res.samples.push_back(diagnose(s, cfg));
            // Crossing time by interpolation of log sup|u| over the last step.
            double frac = 1.0;
            if (sup_old > 0.0 && sup_new > sup_old) {
                frac = std::log(cfg.blowup_threshold / sup_old) / std::log(sup_new / sup_old);
                frac = std::clamp(frac, 0.0, 1.0);
            }
            res.blew_up = true;
            res.T_num = t_old + frac * (s.t - t_old);
            res.termination = PdeTermination::threshold;
            break;
        }
        if (s.t >= cfg.t_max) {
            res.samples.push_back(diagnose(s, cfg));
            res.T_num = s.t;
            res.termination = PdeTermination::horizon;
            break;
        }
        if (s.step_index % cfg.sample_every == 0) {
            res.samples.push_back(diagnose(s, cfg));
        }
        sup_old = sup_new;
    }
    return res;
}

double envelope_profile(const PdeConfig& cfg, double t) {
    const double k = cfg.params.effective_dimension() * (cfg.p - 1.0);
    const double mu = cfg.params.mu;
    return std::pow(cfg.eps, cfg.p) * std::pow(t, -mu - k) * std::pow(t - 1.0, mu + 2.0);
}

EnvelopeCheck envelope_check(const PdeResult& res, const PdeConfig& cfg, double from_t) {
    EnvelopeCheck out;
    bool calibrated = false;
    out.min_ratio = std::numeric_limits<double>::infinity();
    for (const auto& s : res.samples) {
        if (s.t <= from_t) {
            continue;
        }
        const double ratio = s.F / envelope_profile(cfg, s.t);
        if (!calibrated) {
            out.calibration_t = s.t;
            out.calibrated_c = ratio;
            calibrated = true;
        }
        if (ratio < out.min_ratio) {
            out.min_ratio = ratio;
            out.min_ratio_t = s.t;
        }
    }
    out.holds = calibrated && out.min_ratio >= out.calibrated_c * (1.0 - 1e-12);
    return out;
}

PdeSweep lifespan_sweep(const PdeConfig& tmpl, const std::vector<double>& eps_grid) {
    std::vector<std::future<PdeResult>> jobs;
    for (double eps : eps_grid) {
        PdeConfig cfg = tmpl;
        cfg.eps = eps;
        cfg.validate();
        jobs.push_back(std::async(std::launch::async, [cfg] { return run(cfg); }));
    }
    PdeSweep out;
    std::string missing;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        PdeResult r = jobs[i].get();
        if (!r.blew_up) {
            missing += (missing.empty() ? "" : ", ") + format_double(eps_grid[i]);
        }
        out.runs.push_back({eps_grid[i], std::move(r), {}});
    }
    if (!missing.empty()) {
        throw RunFailure("pde sweep: no blow-up before t_max=" + format_double(tmpl.t_max) +
                         " for eps = " + missing + " (increase t_max or eps)");
    }
    std::vector<double> T;
    for (auto& r : out.runs) {
        PdeConfig cfg = tmpl;
        cfg.eps = r.eps;
        r.envelope = envelope_check(r.result, cfg);
        T.push_back(r.result.T_num);
    }
    out.fit = fit_loglog(eps_grid, T);
    return out;
}

PdeConfig pde_preset(std::string_view name) {
    if (name == "heatlike-n2") {
        PdeConfig cfg;
        cfg.params = {2, 0.5, 2.0};
        cfg.p = 2.0;
        cfg.eps = 0.5;
        cfg.R = 1.0;
        cfg.dr = 1.0 / 200.0;
        cfg.cfl = 0.5;
        return cfg;
    }
    throw DomainError("unknown pde preset '" + std::string(name) + "'");
}

std::vector<double> pde_preset_eps_grid(std::string_view name) {
    if (name == "heatlike-n2") {
        return log_grid(0.05, 0.8, 6);
    }
    throw DomainError("unknown pde preset '" + std::string(name) + "'");
}

std::string pde_diagnostics_csv(const PdeResult& res) {
    std::string out = "t,sup_u,F,Lp,support_radius\n";
    for (const auto& s : res.samples) {
        out += csv_row({format_double(s.t), format_double(s.sup), format_double(s.F),
                        format_double(s.Lp), format_double(s.support_radius)});
    }
    return out;
}

std::string pde_snapshot_csv(const PdeSnapshot& snap) {
    std::string out = "r,u\n";
    for (std::size_t i = 0; i < snap.u.size(); ++i) {
        out += csv_row({format_double(static_cast<double>(i) * snap.dr), format_double(snap.u[i])});
    }
    return out;
}

}  // namespace flrw
