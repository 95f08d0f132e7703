#include "flrw/blowup_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>

#include "flrw/bounds.hpp"
#include "flrw/errors.hpp"
#include "flrw/format.hpp"

namespace flrw {

void OdeConfig::validate() const {
    auto bad = [](const std::string& msg) { throw DomainError("ode config: " + msg); };
    if (!(p > 1.0)) bad("p must be > 1");
    if (!(mu >= 0.0)) bad("mu must be >= 0");
    if (!(q >= 0.0)) bad("q must be >= 0");
    if (!(A1 > 0.0)) bad("A1 must be > 0");
    if (!(R >= 0.0)) bad("R must be >= 0");
    if (!(F_init_scale >= 0.0) || !(dF_init_scale >= 0.0)) {
        bad("initial data scales must be >= 0");
    }
    if (!(eps >= 0.0)) bad("eps must be >= 0");
    if (!(blowup_threshold > eps * F_init_scale)) bad("blowup_threshold must exceed F(1)");
    if (!(t_max > 1.0)) bad("t_max must exceed 1");
    if (!(rel_tol > 0.0) || !(abs_tol >= 0.0)) bad("tolerances must be positive");
    if (trace_stride == 0) bad("trace_stride must be >= 1");
}

std::string_view to_string(OdeTermination t) {
    switch (t) {
        case OdeTermination::threshold: return "threshold";
        case OdeTermination::horizon: return "horizon";
        case OdeTermination::step_underflow: return "step_underflow";
    }
    return "horizon";
}

namespace {

using State = std::array<double, 2>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Rhs {
    const OdeConfig& cfg;
    State operator()(double t, const State& y) const {
        const double forcing = cfg.A1 * std::pow(t + cfg.R, -cfg.q) * std::pow(std::abs(y[0]), cfg.p);
        return {y[1], forcing - cfg.mu / t * y[1]};
    }
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [c, k] : terms) {
        out[0] += h * c * (*k)[0];
        out[1] += h * c * (*k)[1];
    }
    return out;
}

struct StepOut {
    State y;
    State k_end;  // f(t+h, y) for FSAL reuse
    double err = 0.0;
};

StepOut dp_step(const Rhs& f, const OdeConfig& cfg, double t, const State& y, const State& k1,
                double h) {
    const State k2 = f(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const State k3 = f(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = f(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = f(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 =
        f(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y5 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = f(t + h, y5);

    double acc = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
        const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        if (e == 0.0) {
            continue;
        }
        const double r = sc > 0.0 ? e / sc : std::numeric_limits<double>::infinity();
        acc += r * r;
    }
    StepOut out{y5, k7, std::sqrt(acc / 2.0)};
    if (!std::isfinite(y5[0]) || !std::isfinite(y5[1])) {
        out.err = std::numeric_limits<double>::infinity();
    }
    return out;
}

}  // namespace

OdeResult integrate(const OdeConfig& cfg) {
    cfg.validate();
    const Rhs f{cfg};
    OdeResult res;

    double t = 1.0;
    State y{cfg.eps * cfg.F_init_scale, cfg.eps * cfg.dF_init_scale};
    State k1 = f(t, y);
    double h = 1e-3;
    std::size_t accepted = 0;
    res.trace.push_back({t, y[0], y[1]});

    while (true) {
        if (res.steps >= cfg.max_steps) {
            throw RunFailure("ode: step budget exhausted at t=" + format_double(t));
        }
        if (h < 1e-14 * t) {
            res.blew_up = true;
            res.T_num = t;
            res.termination = OdeTermination::step_underflow;
            break;
        }
        bool last = false;
        if (t + h >= cfg.t_max) {
            h = cfg.t_max - t;
            last = true;
        }
        const StepOut s = dp_step(f, cfg, t, y, k1, h);
        ++res.steps;
        if (!(s.err <= 1.0)) {
            const double fac = std::isfinite(s.err) ? std::max(0.1, 0.9 * std::pow(s.err, -0.2)) : 0.1;
            h *= fac;
            continue;
        }

        if (s.y[0] >= cfg.blowup_threshold) {
            // Smallest h' in (0, h] whose single step reaches the threshold.
            double lo = 0.0, hi = h;
            for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * (t + hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                const StepOut m = dp_step(f, cfg, t, y, k1, mid);
                if (m.y[0] >= cfg.blowup_threshold || !std::isfinite(m.y[0])) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            const StepOut fin = dp_step(f, cfg, t, y, k1, hi);
            res.blew_up = true;
            res.T_num = t + hi;
            res.termination = OdeTermination::threshold;
            res.trace.push_back({res.T_num, fin.y[0], fin.y[1]});
            break;
        }

        t = last ? cfg.t_max : t + h;
        y = s.y;
        k1 = s.k_end;
        ++accepted;
        if (accepted % cfg.trace_stride == 0 || last) {
            res.trace.push_back({t, y[0], y[1]});
        }
        if (last) {
            res.T_num = t;
            res.termination = OdeTermination::horizon;
            break;
        }
        const double fac = s.err > 0.0 ? std::clamp(0.9 * std::pow(s.err, -0.2), 0.2, 5.0) : 5.0;
        h *= fac;
    }
    return res;
}

bool monotone_invariant_check(const OdeResult& res, double mu, double slack) {
    if (res.trace.empty()) {
        return false;
    }
    double prev = std::pow(res.trace.front().t, mu) * res.trace.front().dF;
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
        const double cur = std::pow(res.trace[i].t, mu) * res.trace[i].dF;
        if (cur < prev - slack * std::abs(prev)) {
            return false;
        }
        prev = cur;
    }
    return true;
}

bool strictly_increasing_F(const OdeResult& res) {
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
        if (!(res.trace[i].F > res.trace[i - 1].F)) {
            return false;
        }
    }
    return true;
}

OdeSweep sweep(const OdeConfig& tmpl, const std::vector<double>& eps_grid, bool keep_traces) {
    std::vector<std::future<OdeResult>> jobs;
    jobs.reserve(eps_grid.size());
    for (double eps : eps_grid) {
        OdeConfig cfg = tmpl;
        cfg.eps = eps;
        cfg.validate();
        jobs.push_back(std::async(std::launch::async, [cfg] { return integrate(cfg); }));
    }
    OdeSweep out;
    std::string missing;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        OdeResult r = jobs[i].get();
        if (!r.blew_up) {
            missing += (missing.empty() ? "" : ", ") + format_double(eps_grid[i]);
        }
        if (!keep_traces) {
            r.trace.clear();
        }
        out.runs.push_back({eps_grid[i], std::move(r)});
    }
    if (!missing.empty()) {
        throw RunFailure("ode sweep: no blow-up before t_max=" + format_double(tmpl.t_max) +
                         " for eps = " + missing + " (increase t_max or eps)");
    }
    std::vector<double> T;
    for (const auto& r : out.runs) {
        T.push_back(r.result.T_num);
    }
    out.fit = fit_loglog(eps_grid, T);
    return out;
}

KatoConsistency kato_consistency(const std::vector<double>& eps, const std::vector<double>& T,
                                 double exponent, double rel_slack) {
    if (eps.size() != T.size() || eps.empty()) {
        throw DegenerateInputError("kato consistency needs matching nonempty eps and T");
    }
    const auto imax = static_cast<std::size_t>(
        std::distance(eps.begin(), std::max_element(eps.begin(), eps.end())));
    KatoConsistency out;
    out.exponent = exponent;
    out.K = T[imax] * std::pow(eps[imax], exponent);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const double bound = out.K * std::pow(eps[i], -exponent);
        out.worst_ratio = std::max(out.worst_ratio, T[i] / bound);
    }
    out.holds = out.worst_ratio <= 1.0 + rel_slack;
    return out;
}

double min_second_difference(const std::vector<double>& eps, const std::vector<double>& T) {
    if (eps.size() != T.size() || eps.size() < 3) {
        throw DegenerateInputError("second differences need at least 3 matching points");
    }
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        pts.emplace_back(std::log(1.0 / eps[i]), std::log(T[i]));
    }
    std::sort(pts.begin(), pts.end());
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        worst = std::min(worst, pts[i + 1].second - 2.0 * pts[i].second + pts[i - 1].second);
    }
    return worst;
}

OdePreset ode_preset(std::string_view name) {
    OdePreset pre;
    pre.name = std::string(name);
    if (name == "heatlike-n2") {
        pre.n = 2;
        pre.alpha = 0.5;
        OdeConfig& c = pre.config;
        c.p = 1.8;
        c.mu = 2.0;
        c.q = pre.n * (1.0 - pre.alpha) * (c.p - 1.0);
        c.A1 = 1.0;
        c.R = 1.0;
        c.t_max = 1e12;
        pre.eps_grid = log_grid(1e-3, 1e-1, 8);
        const auto e = heatlike_exponent(ModelParams{pre.n, pre.alpha, c.mu}, c.p);
        pre.predicted_slope = -e.eps_exponent;
        return pre;
    }
    if (name == "critical-n2") {
        // n = 2, alpha = 0: p = p_F(2) = 2 puts the forcing exponent q at 2.
        pre.n = 2;
        pre.alpha = 0.0;
        OdeConfig& c = pre.config;
        c.p = 2.0;
        c.mu = 2.0;
        c.q = 2.0;
        c.A1 = 1.0;
        c.R = 1.0;
        c.t_max = 1e300;
        pre.eps_grid = log_grid(0.05, 0.5, 8);
        return pre;
    }
    throw DomainError("unknown ode preset '" + std::string(name) + "'");
}

std::string ode_trace_csv(const OdeResult& res) {
    std::string out = "t,F,dF\n";
    for (const auto& s : res.trace) {
        out += csv_row({format_double(s.t), format_double(s.F), format_double(s.dF)});
    }
    return out;
}

std::string sweep_csv(const std::vector<double>& eps, const std::vector<double>& T) {
    std::string out = "eps,T_num\n";
    for (std::size_t i = 0; i < eps.size() && i < T.size(); ++i) {
        out += csv_row({format_double(eps[i]), format_double(T[i])});
    }
    return out;
}

}  // namespace flrw
