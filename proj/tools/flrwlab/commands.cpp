#include <algorithm>
#include <cmath>
#include <cstdio>

#include "config.hpp"
#include "flrw/blowup_ode.hpp"
#include "flrw/bounds.hpp"
#include "flrw/errors.hpp"
#include "flrw/exponents.hpp"
#include "flrw/format.hpp"
#include "flrw/kato.hpp"
#include "flrw/pde.hpp"

namespace flrwlab {

namespace {

using flrw::format_double;

double real(const json& cfg, const char* key) { return cfg.at(key).get<double>(); }
long integer(const json& cfg, const char* key) { return cfg.at(key).get<long>(); }
bool flag(const json& cfg, const char* key) { return cfg.at(key).get<bool>(); }

std::vector<double> reals(const json& cfg, const char* key) {
    return cfg.at(key).get<std::vector<double>>();
}

json quadratic_json(const flrw::Quadratic& q) {
    return {{"c2", num(q.c2)}, {"c1", num(q.c1)}, {"c0", num(q.c0)}};
}

json bound_json(const flrw::LifespanBound& b) {
    return {{"kind", flrw::to_string(b.kind)},
            {"form", flrw::to_string(b.form)},
            {"eps_exponent", num(b.eps_exponent)},
            {"applicable", b.applicable}};
}

double relative_deviation(double value, double target) {
    return std::abs(value - target) / std::abs(target);
}

// Model parameters, either direct or through the FLRW map.
std::vector<Param> model_params() {
    return {
        {"n", Kind::integer, 2, "spatial dimension"},
        {"alpha", Kind::real, 0.0, "propagation exponent, 0 <= alpha < 1"},
        {"mu", Kind::real, 0.0, "damping coefficient"},
        {"flrw", Kind::flag, false, "derive alpha, mu from --w"},
        {"w", Kind::real, 1.0, "equation-of-state constant (with --flrw)"},
    };
}

flrw::ModelParams model_from(const json& cfg) {
    const int n = static_cast<int>(integer(cfg, "n"));
    if (flag(cfg, "flrw")) {
        const flrw::FlrwParams f{n, real(cfg, "w")};
        f.validate();
        return flrw::flrw_to_model(f);
    }
    flrw::ModelParams m{n, real(cfg, "alpha"), real(cfg, "mu")};
    m.validate();
    return m;
}

Outcome cmd_exponents(const json& cfg, Output&) {
    const flrw::ModelParams m = model_from(cfg);
    const double k = m.effective_dimension();
    const auto pc = flrw::p_c(m);
    json s = {
        {"params", {{"n", m.n}, {"alpha", num(m.alpha)}, {"mu", num(m.mu)}}},
        {"effective_dimension", num(k)},
        {"p_F", num(flrw::fujita(k))},
        {"p_S", num(flrw::strauss_exponent(m.n))},
        {"p_c", num(pc.value_or_infinity())},
        {"p_c_kind", flrw::to_string(pc.kind)},
        {"gamma_coefficients", quadratic_json(flrw::gamma_quadratic(m))},
        {"threshold_wave_intermediate", num(flrw::threshold_wave_intermediate(m))},
        {"threshold_wave_heat", num(flrw::threshold_wave_heat(m))},
        {"mu_star", num(flrw::mu_star(m.n, m.alpha))},
    };
    if (flag(cfg, "flrw")) {
        const flrw::FlrwParams f{m.n, real(cfg, "w")};
        const auto ws = flrw::w_star(m.n);
        s["w"] = num(f.w);
        s["w_star"] = ws ? num(*ws) : json(nullptr);
        s["gamma0_coefficients"] = quadratic_json(flrw::gamma0_quadratic(f.n, f.w));
        s["p_c_flrw"] = num(flrw::p_c_flrw(f).value_or_infinity());
    }
    return {s};
}

Outcome cmd_classify(const json& cfg, Output&) {
    const flrw::ModelParams m = model_from(cfg);
    const double p = real(cfg, "p");
    if (!(p > 1.0)) {
        throw flrw::DomainError("p must be > 1");
    }
    const auto label = flrw::classify(m, p);
    json bounds = json::array({bound_json(flrw::heatlike_exponent(m, p)),
                               bound_json(flrw::wavelike_exponent(m, p)),
                               bound_json(flrw::intermediate_exponent(m, p))});
    for (const auto& b : flrw::critical_bounds(m, p)) {
        bounds.push_back(bound_json(b));
    }
    json s = {
        {"params", {{"n", m.n}, {"alpha", num(m.alpha)}, {"mu", num(m.mu)}, {"p", num(p)}}},
        {"label", flrw::to_string(label)},
        {"bound", bound_json(flrw::labeled_bound(m, p, label))},
        {"bounds", bounds},
        {"p_F", num(flrw::fujita(m.effective_dimension()))},
        {"p_c", num(flrw::p_c(m).value_or_infinity())},
    };
    return {s};
}

json map_preset(const std::string& name) {
    const auto fp = flrw::figure_preset(name);
    return {{"flrw", fp.flrw},           {"n", fp.n},
            {"alpha", fp.alpha},         {"axis1_min", fp.axis1.min},
            {"axis1_max", fp.axis1.max}, {"axis1_step", fp.axis1.step},
            {"p_min", fp.axis2.min},     {"p_max", fp.axis2.max},
            {"p_step", fp.axis2.step}};
}

Outcome cmd_map(const json& cfg, Output& out) {
    const std::string preset = cfg.at("preset").get<std::string>();
    flrw::FigurePreset fp;
    if (!preset.empty()) {
        fp = flrw::figure_preset(preset);
    } else {
        fp.name = "custom";
        fp.flrw = flag(cfg, "flrw");
        fp.axis1 = {fp.flrw ? "w" : "mu", 0.0, 0.0, 0.0, !fp.flrw};
        fp.axis2 = {"p", 0.0, 0.0, 0.0, false};
    }
    fp.flrw = flag(cfg, "flrw");
    fp.n = static_cast<int>(integer(cfg, "n"));
    fp.alpha = real(cfg, "alpha");
    fp.axis1.min = real(cfg, "axis1_min");
    fp.axis1.max = real(cfg, "axis1_max");
    fp.axis1.step = real(cfg, "axis1_step");
    fp.axis2.min = real(cfg, "p_min");
    fp.axis2.max = real(cfg, "p_max");
    fp.axis2.step = real(cfg, "p_step");
    if (!(fp.axis1.step > 0.0) || !(fp.axis2.step > 0.0)) {
        throw ConfigError("axis steps must be positive");
    }
    if (!fp.flrw) {
        flrw::ModelParams{fp.n, fp.alpha, 0.0}.validate();
    }

    const auto map = flrw::build_map(fp);
    if (map.cells.empty()) {
        throw ConfigError("empty admissible region for the requested axes");
    }
    if (preset == "fig2" && map.count(flrw::RegionLabel::A) != 0) {
        throw flrw::RunFailure("fig2: region A must be empty, found " +
                               std::to_string(map.count(flrw::RegionLabel::A)) + " cells");
    }
    out.write("map.csv", flrw::region_map_csv(map));
    out.write("map.svg", flrw::region_map_svg(map, fp));

    json counts = json::object();
    for (auto l : {flrw::RegionLabel::A, flrw::RegionLabel::B, flrw::RegionLabel::C,
                   flrw::RegionLabel::CriticalFujita, flrw::RegionLabel::CriticalPc,
                   flrw::RegionLabel::Unclassified}) {
        counts[std::string(flrw::to_string(l))] = map.count(l);
    }
    return {{{"name", fp.name}, {"nx", map.nx}, {"ny", map.ny}, {"counts", counts}}};
}

std::vector<Param> map_params() {
    return {
        {"preset", Kind::text, "", "fig1 or fig2"},
        {"flrw", Kind::flag, false, "first axis is w instead of mu"},
        {"n", Kind::integer, 2, "spatial dimension"},
        {"alpha", Kind::real, 0.6, "fixed alpha for (mu, p) maps"},
        {"axis1_min", Kind::real, 0.0, "first axis lower end"},
        {"axis1_max", Kind::real, 3.0, "first axis upper end"},
        {"axis1_step", Kind::real, 0.01, "first axis step"},
        {"p_min", Kind::real, 1.0, "p lower end (excluded)"},
        {"p_max", Kind::real, 4.0, "p upper end"},
        {"p_step", Kind::real, 0.01, "p step"},
    };
}

std::vector<Param> kato_critical_params() {
    return {
        {"p", Kind::real, 2.0, "nonlinearity power"},
        {"b", Kind::real, 1.0, "initial log power"},
        {"mu", Kind::real, 0.0, "damping coefficient"},
        {"A0", Kind::real, 1.0, "lower-envelope constant"},
        {"A1", Kind::real, 1.0, "forcing constant"},
        {"R", Kind::real, 1.0, "support radius"},
        {"T0", Kind::real, 1.0, "initial time"},
        {"T1", Kind::real, 2.0, "envelope start time"},
        {"C_R", Kind::real, 1.0, "support constant"},
    };
}

flrw::KatoCriticalParams kato_critical_from(const json& cfg) {
    flrw::KatoCriticalParams kc;
    kc.p = real(cfg, "p");
    kc.b = real(cfg, "b");
    kc.mu = real(cfg, "mu");
    kc.A0 = real(cfg, "A0");
    kc.A1 = real(cfg, "A1");
    kc.R = real(cfg, "R");
    kc.T0 = real(cfg, "T0");
    kc.T1 = real(cfg, "T1");
    kc.validate();
    return kc;
}

Outcome cmd_kato_threshold(const json& cfg, Output&) {
    flrw::KatoSubcriticalParams kp;
    kp.p = real(cfg, "p");
    kp.a = real(cfg, "a");
    kp.b = real(cfg, "b");
    kp.q = real(cfg, "q");
    kp.mu = real(cfg, "mu");
    kp.A0 = real(cfg, "A0");
    kp.A1 = real(cfg, "A1");
    kp.R = real(cfg, "R");
    kp.T0 = real(cfg, "T0");
    kp.T1 = real(cfg, "T1");
    const auto th = flrw::subcritical_threshold(kp);
    return {{{"M", num(kp.M())},
             {"exponent", num(th.exponent)},
             {"threshold", num(th.scale)},
             {"normalized", th.normalized}}};
}

Outcome cmd_kato_sequences(const json& cfg, Output& out) {
    const auto kc = kato_critical_from(cfg);
    const long j_max = integer(cfg, "jmax");
    if (j_max < 0 || j_max > 100000) {
        throw ConfigError("jmax must be in [0, 100000]");
    }
    const double C_R = real(cfg, "C_R");
    const auto table = flrw::iterate_sequences(kc, static_cast<int>(j_max), C_R);
    const auto ec = flrw::compute_E(kc, C_R);
    const auto j0 = flrw::detect_envelope_start(table, kc, ec.E);
    double worst = 0.0;
    for (const auto& s : table.states) {
        const double cf = flrw::closed_form_b(kc, s.j);
        worst = std::max(worst, std::abs(s.b - cf) / std::max(1.0, std::abs(cf)));
    }
    out.write("sequences.csv", flrw::sequence_table_csv(table));
    return {{{"mu_case", flrw::to_string(kc.mu_case())},
             {"rows", table.states.size()},
             {"truncated", table.truncated},
             {"E", num(ec.E)},
             {"B", num(ec.B)},
             {"j0", j0 ? json(*j0) : json(nullptr)},
             {"closed_form_max_rel_diff", num(worst)}}};
}

Outcome cmd_kato_envelope(const json& cfg, Output&) {
    const auto kc = kato_critical_from(cfg);
    flrw::EnvelopeOptions opts;
    opts.delta = real(cfg, "delta");
    opts.points_per_decade = static_cast<int>(integer(cfg, "points_per_decade"));
    opts.max_decades = real(cfg, "max_decades");
    const auto rep = flrw::envelope_divergence(kc, real(cfg, "C_R"), opts);
    const auto ct = flrw::critical_threshold(kc);
    return {{{"mu_case", flrw::to_string(kc.mu_case())},
             {"found", rep.found},
             {"t_star", rep.found ? num(rep.t_star) : json(nullptr)},
             {"delta_margin", rep.found ? num(rep.delta_margin) : json(nullptr)},
             {"E", num(rep.E)},
             {"B", num(rep.B)},
             {"t_start", num(rep.t_start)},
             {"horizon", num(rep.horizon)},
             {"critical_threshold", {{"exponent", num(ct.exponent)}, {"threshold", num(ct.threshold)}}}}};
}

// ODE

std::vector<Param> ode_params(bool sweep) {
    std::vector<Param> ps = {
        {"preset", Kind::text, "heatlike-n2", "heatlike-n2 or critical-n2"},
        {"p", Kind::real, 2.0, "nonlinearity power"},
        {"mu", Kind::real, 0.0, "damping coefficient"},
        {"q", Kind::real, 0.0, "forcing decay (t+R)^{-q}"},
        {"A1", Kind::real, 1.0, "forcing constant"},
        {"R", Kind::real, 1.0, "forcing shift"},
        {"F_init_scale", Kind::real, 1.0, "F(1) = eps * scale"},
        {"dF_init_scale", Kind::real, 1.0, "F'(1) = eps * scale"},
        {"eps", Kind::real, 0.1, "data size"},
        {"blowup_threshold", Kind::real, 1e12, "F level counted as blow-up"},
        {"t_max", Kind::real, 1e12, "integration horizon"},
        {"rel_tol", Kind::real, 1e-10, "relative tolerance"},
        {"abs_tol", Kind::real, 0.0, "absolute tolerance"},
        {"trace_stride", Kind::integer, 1, "keep every k-th accepted step"},
    };
    if (sweep) {
        ps.push_back({"eps_grid", Kind::real_list, json::array(), "comma-separated eps values"});
    }
    return ps;
}

json ode_preset_values(const std::string& name, bool sweep) {
    const auto pre = flrw::ode_preset(name);
    const auto& c = pre.config;
    json v = {{"p", c.p},
              {"mu", c.mu},
              {"q", c.q},
              {"A1", c.A1},
              {"R", c.R},
              {"F_init_scale", c.F_init_scale},
              {"dF_init_scale", c.dF_init_scale},
              {"eps", c.eps},
              {"blowup_threshold", c.blowup_threshold},
              {"t_max", c.t_max},
              {"rel_tol", c.rel_tol},
              {"abs_tol", c.abs_tol},
              {"trace_stride", c.trace_stride}};
    if (sweep) {
        v["eps_grid"] = pre.eps_grid;
    }
    return v;
}

flrw::OdeConfig ode_from(const json& cfg) {
    flrw::OdeConfig c;
    c.p = real(cfg, "p");
    c.mu = real(cfg, "mu");
    c.q = real(cfg, "q");
    c.A1 = real(cfg, "A1");
    c.R = real(cfg, "R");
    c.F_init_scale = real(cfg, "F_init_scale");
    c.dF_init_scale = real(cfg, "dF_init_scale");
    c.eps = real(cfg, "eps");
    c.blowup_threshold = real(cfg, "blowup_threshold");
    c.t_max = real(cfg, "t_max");
    c.rel_tol = real(cfg, "rel_tol");
    c.abs_tol = real(cfg, "abs_tol");
    const long stride = integer(cfg, "trace_stride");
    if (stride < 1) {
        throw ConfigError("trace_stride must be >= 1");
    }
    c.trace_stride = static_cast<std::size_t>(stride);
    c.validate();
    return c;
}

Outcome cmd_ode_run(const json& cfg, Output& out) {
    const auto c = ode_from(cfg);
    const auto res = flrw::integrate(c);
    out.write("trace.csv", flrw::ode_trace_csv(res));
    Outcome o;
    o.summary = {{"blew_up", res.blew_up},
                 {"T_num", num(res.T_num)},
                 {"termination", flrw::to_string(res.termination)},
                 {"steps", res.steps},
                 {"monotone_invariant", flrw::monotone_invariant_check(res, c.mu)},
                 {"F_strictly_increasing", flrw::strictly_increasing_F(res)}};
    if (!res.blew_up) {
        o.exit_code = kExitRuntimeFailure;
    }
    return o;
}

Outcome cmd_ode_sweep(const json& cfg, Output& out) {
    const auto c = ode_from(cfg);
    const auto grid = reals(cfg, "eps_grid");
    const auto sw = flrw::sweep(c, grid, true);
    std::vector<double> T;
    bool monotone = true;
    for (const auto& r : sw.runs) {
        T.push_back(r.result.T_num);
    }
    out.write("sweep.csv", flrw::sweep_csv(grid, T));

    json s = {{"slope", num(sw.fit.slope)},
              {"intercept", num(sw.fit.intercept)},
              {"r_squared", num(sw.fit.r_squared)},
              {"min_second_difference", num(flrw::min_second_difference(grid, T))}};
    if (c.q < 2.0) {
        // Heat-like wiring: q = n(1-alpha)(p-1) turns -p(p-1)/M into -(p-1)/(2-q).
        const double predicted = -(c.p - 1.0) / (2.0 - c.q);
        const auto kc = flrw::kato_consistency(grid, T, -predicted);
        s["predicted_slope"] = num(predicted);
        s["deviation"] = num(relative_deviation(sw.fit.slope, predicted));
        s["kato_consistency"] = {{"K", num(kc.K)},
                                 {"exponent", num(kc.exponent)},
                                 {"worst_ratio", num(kc.worst_ratio)},
                                 {"holds", kc.holds}};
    } else {
        s["predicted_slope"] = nullptr;
        s["deviation"] = nullptr;
    }
    for (const auto& r : sw.runs) {
        monotone = monotone && flrw::monotone_invariant_check(r.result, c.mu);
    }
    s["monotone_invariant_all"] = monotone;
    return {s};
}

// PDE

std::vector<Param> pde_params(bool sweep) {
    std::vector<Param> ps = {
        {"preset", Kind::text, "heatlike-n2", "heatlike-n2"},
        {"n", Kind::integer, 2, "spatial dimension"},
        {"alpha", Kind::real, 0.5, "propagation exponent"},
        {"mu", Kind::real, 2.0, "damping coefficient"},
        {"p", Kind::real, 2.0, "nonlinearity power"},
        {"eps", Kind::real, 0.5, "data size"},
        {"R", Kind::real, 1.0, "data support radius"},
        {"dr", Kind::real, 0.005, "radial step"},
        {"cfl", Kind::real, 0.5, "Courant factor"},
        {"blowup_threshold", Kind::real, 1e8, "sup|u| counted as blow-up"},
        {"t_max", Kind::real, 1e4, "horizon"},
        {"margin_cells", Kind::integer, 5, "grid cells kept beyond the cone"},
        {"dt_cap", Kind::real, 0.1, "largest time step"},
        {"nonlinear_dt_factor", Kind::real, 0.05, "dt <= factor * sup|u|^{-(p-1)/2}"},
        {"sample_every", Kind::integer, 20, "diagnostics cadence in steps"},
        {"snapshot_times", Kind::real_list, json::array(), "times for (r, u) dumps"},
    };
    if (sweep) {
        ps.push_back({"eps_grid", Kind::real_list, json::array(), "comma-separated eps values"});
    }
    return ps;
}

json pde_preset_values(const std::string& name, bool sweep) {
    const auto c = flrw::pde_preset(name);
    json v = {{"n", c.params.n},
              {"alpha", c.params.alpha},
              {"mu", c.params.mu},
              {"p", c.p},
              {"eps", c.eps},
              {"R", c.R},
              {"dr", c.dr},
              {"cfl", c.cfl},
              {"blowup_threshold", c.blowup_threshold},
              {"t_max", c.t_max},
              {"margin_cells", c.margin_cells},
              {"dt_cap", c.dt_cap},
              {"nonlinear_dt_factor", c.nonlinear_dt_factor},
              {"sample_every", c.sample_every},
              {"snapshot_times", c.snapshot_times}};
    if (sweep) {
        v["eps_grid"] = flrw::pde_preset_eps_grid(name);
    }
    return v;
}

flrw::PdeConfig pde_from(const json& cfg) {
    flrw::PdeConfig c;
    c.params = {static_cast<int>(integer(cfg, "n")), real(cfg, "alpha"), real(cfg, "mu")};
    c.p = real(cfg, "p");
    c.eps = real(cfg, "eps");
    c.R = real(cfg, "R");
    c.dr = real(cfg, "dr");
    c.cfl = real(cfg, "cfl");
    c.blowup_threshold = real(cfg, "blowup_threshold");
    c.t_max = real(cfg, "t_max");
    c.margin_cells = static_cast<int>(integer(cfg, "margin_cells"));
    c.dt_cap = real(cfg, "dt_cap");
    c.nonlinear_dt_factor = real(cfg, "nonlinear_dt_factor");
    const long every = integer(cfg, "sample_every");
    if (every < 1) {
        throw ConfigError("sample_every must be >= 1");
    }
    c.sample_every = static_cast<std::size_t>(every);
    c.snapshot_times = reals(cfg, "snapshot_times");
    c.validate();
    return c;
}

json envelope_json(const flrw::EnvelopeCheck& e) {
    return {{"calibration_t", num(e.calibration_t)},
            {"calibrated_c", num(e.calibrated_c)},
            {"min_ratio", num(e.min_ratio)},
            {"min_ratio_t", num(e.min_ratio_t)},
            {"holds", e.holds}};
}

double max_support_excess(const flrw::PdeResult& res, const flrw::PdeConfig& c) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& s : res.samples) {
        worst = std::max(worst, s.support_radius - (flrw::cone_growth(s.t, c.params.alpha) + c.R));
    }
    return worst;
}

Outcome cmd_pde_run(const json& cfg, Output& out) {
    const auto c = pde_from(cfg);
    const auto res = flrw::run(c);
    out.write("diagnostics.csv", flrw::pde_diagnostics_csv(res));
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i);
        out.write(name, flrw::pde_snapshot_csv(res.snapshots[i]));
    }
    Outcome o;
    o.summary = {{"blew_up", res.blew_up},
                 {"T_num", num(res.T_num)},
                 {"termination", flrw::to_string(res.termination)},
                 {"steps", res.steps},
                 {"samples", res.samples.size()},
                 {"support_ok", res.all_support_ok()},
                 {"max_support_excess", num(max_support_excess(res, c))},
                 {"holder_ok", res.all_holder_ok()},
                 {"F_nondecreasing", res.F_nondecreasing()},
                 {"envelope", envelope_json(flrw::envelope_check(res, c))}};
    if (!res.blew_up) {
        o.exit_code = kExitRuntimeFailure;
    }
    return o;
}

Outcome cmd_pde_sweep(const json& cfg, Output& out) {
    const auto c = pde_from(cfg);
    const auto grid = reals(cfg, "eps_grid");
    const auto sw = flrw::lifespan_sweep(c, grid);

    std::vector<double> T;
    std::string env_csv = "eps,T_num,calibration_t,calibrated_c,min_ratio,holds\n";
    bool support_ok = true;
    bool envelope_ok = true;
    for (const auto& r : sw.runs) {
        T.push_back(r.result.T_num);
        support_ok = support_ok && r.result.all_support_ok();
        envelope_ok = envelope_ok && r.envelope.holds;
        env_csv += flrw::csv_row({format_double(r.eps), format_double(r.result.T_num),
                                  format_double(r.envelope.calibration_t),
                                  format_double(r.envelope.calibrated_c),
                                  format_double(r.envelope.min_ratio),
                                  r.envelope.holds ? "true" : "false"});
    }
    out.write("sweep.csv", flrw::sweep_csv(grid, T));
    out.write("envelope.csv", env_csv);

    std::vector<std::pair<double, double>> byeps;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        byeps.emplace_back(grid[i], T[i]);
    }
    std::sort(byeps.begin(), byeps.end());
    bool decreasing = true;
    for (std::size_t i = 1; i < byeps.size(); ++i) {
        decreasing = decreasing && byeps[i].second < byeps[i - 1].second;
    }

    const auto hb = flrw::heatlike_exponent(c.params, c.p);
    json s = {{"slope", num(sw.fit.slope)},
              {"intercept", num(sw.fit.intercept)},
              {"r_squared", num(sw.fit.r_squared)},
              {"T_strictly_decreasing", decreasing},
              {"support_ok_all", support_ok},
              {"envelope_holds_all", envelope_ok}};
    if (hb.applicable) {
        s["predicted_slope"] = num(-hb.eps_exponent);
        s["deviation"] = num(relative_deviation(sw.fit.slope, -hb.eps_exponent));
    } else {
        s["predicted_slope"] = nullptr;
        s["deviation"] = nullptr;
    }
    return {s};
}

std::vector<Command> build() {
    std::vector<Command> cmds;
    {
        auto ps = model_params();
        cmds.push_back({{"exponents"}, "Critical exponents and thresholds", ps, false, {},
                        cmd_exponents});
        ps.push_back({"p", Kind::real, 2.0, "nonlinearity power"});
        cmds.push_back({{"classify"}, "Region label and lifespan bound at one point", ps, false,
                        {}, cmd_classify});
    }
    cmds.push_back({{"map"}, "Region map CSV and SVG", map_params(), true, map_preset, cmd_map});

    cmds.push_back({{"kato", "threshold"},
                    "Power-type lifespan threshold",
                    {{"p", Kind::real, 2.0, "nonlinearity power"},
                     {"a", Kind::real, 0.0, "envelope decay power"},
                     {"b", Kind::real, 1.0, "envelope growth power"},
                     {"q", Kind::real, 1.0, "forcing decay power"},
                     {"mu", Kind::real, 0.0, "damping coefficient"},
                     {"A0", Kind::real, 1.0, "envelope constant"},
                     {"A1", Kind::real, 1.0, "forcing constant"},
                     {"R", Kind::real, 1.0, "support radius"},
                     {"T0", Kind::real, 1.0, "initial time"},
                     {"T1", Kind::real, 2.0, "envelope start time"}},
                    false,
                    {},
                    cmd_kato_threshold});
    {
        auto ps = kato_critical_params();
        ps.push_back({"jmax", Kind::integer, 20, "last index"});
        cmds.push_back({{"kato", "sequences"}, "Iterated b_j, C_j table", ps, true, {},
                        cmd_kato_sequences});
    }
    {
        auto ps = kato_critical_params();
        ps.push_back({"delta", Kind::real, 1e-3, "required bracket margin"});
        ps.push_back({"points_per_decade", Kind::integer, 64, "time grid density"});
        ps.push_back({"max_decades", Kind::real, 300.0, "search horizon in decades"});
        cmds.push_back({{"kato", "envelope"}, "Time at which the lower envelope diverges", ps,
                        false, {}, cmd_kato_envelope});
    }

    cmds.push_back({{"ode", "run"}, "Integrate the comparison ODE", ode_params(false), true,
                    [](const std::string& n) { return ode_preset_values(n, false); },
                    cmd_ode_run});
    cmds.push_back({{"ode", "sweep"}, "Lifespan sweep over eps with log-log fit",
                    ode_params(true), true,
                    [](const std::string& n) { return ode_preset_values(n, true); },
                    cmd_ode_sweep});
    cmds.push_back({{"pde", "run"}, "Radial PDE run with diagnostics", pde_params(false), true,
                    [](const std::string& n) { return pde_preset_values(n, false); },
                    cmd_pde_run});
    cmds.push_back({{"pde", "sweep"}, "PDE lifespan sweep over eps", pde_params(true), true,
                    [](const std::string& n) { return pde_preset_values(n, true); },
                    cmd_pde_sweep});
    return cmds;
}

}  // namespace

const std::vector<Command>& commands() {
    static const std::vector<Command> cmds = build();
    return cmds;
}

}  // namespace flrwlab
