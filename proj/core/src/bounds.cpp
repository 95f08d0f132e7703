#include "flrw/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "flrw/errors.hpp"
#include "flrw/format.hpp"

namespace flrw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

LifespanBound power_bound(BoundKind kind, double exponent) {
    return {kind, BoundForm::power, exponent, true};
}

LifespanBound not_applicable(BoundKind kind, BoundForm form = BoundForm::power) {
    return {kind, form, kNaN, false};
}

/// (p-1) / (2 - k(p-1)) when the denominator is positive.
LifespanBound fujita_type(BoundKind kind, double k, double p) {
    if (!(p > 1.0)) {
        return not_applicable(kind);
    }
    const double denom = 2.0 - k * (p - 1.0);
    if (!(denom > 0.0)) {
        return not_applicable(kind);
    }
    return power_bound(kind, (p - 1.0) / denom);
}

/// 2(1-alpha)/denom, +inf for nonpositive denom.
double crossing(double one_minus_alpha, double denom) {
    return denom > 0.0 ? 2.0 * one_minus_alpha / denom : kInf;
}

}  // namespace

std::string_view to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::HeatlikeSub: return "HeatlikeSub";
        case BoundKind::WavelikeSub: return "WavelikeSub";
        case BoundKind::IntermediateSub: return "IntermediateSub";
        case BoundKind::CriticalFujitaMuLow: return "CriticalFujitaMuLow";
        case BoundKind::CriticalFujitaMuHigh: return "CriticalFujitaMuHigh";
        case BoundKind::CriticalPc: return "CriticalPc";
        case BoundKind::NoneKnown: return "NoneKnown";
    }
    return "NoneKnown";
}

std::string_view to_string(BoundForm form) {
    return form == BoundForm::power ? "power" : "exp_power";
}

std::string_view to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::A: return "A";
        case RegionLabel::B: return "B";
        case RegionLabel::C: return "C";
        case RegionLabel::CriticalFujita: return "CriticalFujita";
        case RegionLabel::CriticalPc: return "CriticalPc";
        case RegionLabel::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

LifespanBound heatlike_exponent(const ModelParams& params, double p) {
    params.validate();
    return fujita_type(BoundKind::HeatlikeSub, params.effective_dimension(), p);
}

LifespanBound wavelike_exponent(const ModelParams& params, double p) {
    params.validate();
    if (!(p > 1.0)) {
        return not_applicable(BoundKind::WavelikeSub);
    }
    const double g = gamma(params, p);
    if (!(g > 0.0)) {
        return not_applicable(BoundKind::WavelikeSub);
    }
    return power_bound(BoundKind::WavelikeSub,
                       2.0 * p * (p - 1.0) / ((1.0 - params.alpha) * g));
}

LifespanBound intermediate_exponent(const ModelParams& params, double p) {
    params.validate();
    return fujita_type(BoundKind::IntermediateSub,
                       params.effective_dimension() + params.mu - 1.0, p);
}

std::vector<LifespanBound> critical_bounds(const ModelParams& params, double p) {
    params.validate();
    std::vector<LifespanBound> out;
    const double pf = fujita(params.effective_dimension());
    if (std::abs(p - pf) <= kCriticalTolerance) {
        if (params.mu <= 1.0) {
            out.push_back({BoundKind::CriticalFujitaMuLow, BoundForm::exp_power,
                           p * (p - 1.0) / (p + 1.0), true});
        } else {
            out.push_back({BoundKind::CriticalFujitaMuHigh, BoundForm::exp_power, p - 1.0, true});
        }
    }
    const RootReport pc = p_c(params);
    if (pc.root && std::abs(p - *pc.root) <= kCriticalTolerance &&
        *pc.root > pf + kCriticalTolerance) {
        out.push_back({BoundKind::CriticalPc, BoundForm::exp_power, p * (p - 1.0), true});
    }
    return out;
}

double threshold_wave_intermediate(const ModelParams& params) {
    params.validate();
    return crossing(1.0 - params.alpha, params.effective_dimension() + params.mu - 1.0);
}

double threshold_wave_heat(const ModelParams& params) {
    params.validate();
    return crossing(1.0 - params.alpha, params.effective_dimension() - params.mu + 1.0);
}

RegionLabel classify(const ModelParams& params, double p) {
    params.validate();
    if (!(p > 1.0)) {
        return RegionLabel::Unclassified;
    }
    const double pf = fujita(params.effective_dimension());
    const double pc = p_c(params).value_or_infinity();

    if (std::abs(p - pf) <= kCriticalTolerance) {
        return RegionLabel::CriticalFujita;
    }
    if (std::isfinite(pc) && std::abs(p - pc) <= kCriticalTolerance &&
        pc > pf + kCriticalTolerance) {
        return RegionLabel::CriticalPc;
    }

    // +inf here means the A-constraint is vacuous.
    const double thr_a = threshold_wave_intermediate(params);
    const double thr_c = threshold_wave_heat(params);

    if (p <= thr_a) {
        return RegionLabel::A;
    }
    if (p > std::max({thr_a, thr_c, 1.0}) && p < pc) {
        return RegionLabel::B;
    }
    if (p <= thr_c && p < pf) {
        return RegionLabel::C;
    }
    return RegionLabel::Unclassified;
}

LifespanBound labeled_bound(const ModelParams& params, double p, RegionLabel label) {
    switch (label) {
        case RegionLabel::A: return intermediate_exponent(params, p);
        case RegionLabel::B: return wavelike_exponent(params, p);
        case RegionLabel::C: return heatlike_exponent(params, p);
        case RegionLabel::CriticalFujita:
        case RegionLabel::CriticalPc: {
            auto bounds = critical_bounds(params, p);
            if (bounds.empty()) {
                break;
            }
            return *std::min_element(bounds.begin(), bounds.end(),
                                     [](const auto& a, const auto& b) {
                                         return a.eps_exponent < b.eps_exponent;
                                     });
        }
        case RegionLabel::Unclassified: break;
    }
    return not_applicable(BoundKind::NoneKnown);
}

std::vector<double> AxisSpec::samples() const {
    if (!(step > 0.0) || !std::isfinite(min) || !std::isfinite(max)) {
        throw DegenerateInputError("axis '" + name + "' needs a positive step and finite range");
    }
    std::vector<double> out;
    const double slack = 1e-9 * step;
    for (long k = include_min ? 0 : 1;; ++k) {
        const double v = min + static_cast<double>(k) * step;
        if (v > max + slack) {
            break;
        }
        out.push_back(v);
    }
    return out;
}

std::size_t RegionMap::count(RegionLabel label) const {
    return static_cast<std::size_t>(std::count_if(
        cells.begin(), cells.end(), [label](const RegionCell& c) { return c.label == label; }));
}

namespace {

template <typename ParamsAt>
RegionMap sweep(const AxisSpec& ax1, const AxisSpec& ax2, ParamsAt params_at) {
    RegionMap map;
    map.axis1 = ax1;
    map.axis2 = ax2;
    const auto xs = ax1.samples();
    const auto ys = ax2.samples();
    if (xs.empty() || ys.empty()) {
        throw DegenerateInputError("region map has an empty axis");
    }
    map.nx = xs.size();
    map.ny = ys.size();
    map.cells.resize(map.nx * map.ny);

    // Rows are independent; each worker owns a strided subset of them.
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(map.ny)));
    auto fill_rows = [&](unsigned worker) {
        for (std::size_t iy = worker; iy < map.ny; iy += workers) {
            for (std::size_t ix = 0; ix < map.nx; ++ix) {
                const ModelParams mp = params_at(xs[ix]);
                const double p = ys[iy];
                const RegionLabel label = classify(mp, p);
                map.cells[iy * map.nx + ix] = {xs[ix], p, label,
                                               labeled_bound(mp, p, label).eps_exponent};
            }
        }
    };
    if (workers == 1) {
        fill_rows(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(fill_rows, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return map;
}

}  // namespace

RegionMap region_map_mu_p(int n, double alpha, const AxisSpec& mu_axis, const AxisSpec& p_axis) {
    ModelParams{n, alpha, 0.0}.validate();
    return sweep(mu_axis, p_axis, [=](double mu) { return ModelParams{n, alpha, mu}; });
}

RegionMap region_map_w_p(int n, const AxisSpec& w_axis, const AxisSpec& p_axis) {
    return sweep(w_axis, p_axis, [=](double w) { return flrw_to_model(FlrwParams{n, w}); });
}

FigurePreset figure_preset(std::string_view name) {
    if (name == "fig1") {
        return {"fig1", false, 2, 0.6, {"mu", 0.0, 3.0, 0.01, true}, {"p", 1.0, 4.0, 0.01, false}};
    }
    if (name == "fig2") {
        return {"fig2", true, 3, 0.0,
                {"w", -1.0 / 3.0, 1.0, 0.005, false}, {"p", 1.0, 3.0, 0.005, false}};
    }
    throw DomainError("unknown map preset '" + std::string(name) + "'");
}

RegionMap build_map(const FigurePreset& preset) {
    return preset.flrw ? region_map_w_p(preset.n, preset.axis1, preset.axis2)
                       : region_map_mu_p(preset.n, preset.alpha, preset.axis1, preset.axis2);
}

std::string region_map_csv(const RegionMap& map) {
    std::string out = "axis1,axis2,label,best_exponent\n";
    out.reserve(map.cells.size() * 32);
    for (const auto& c : map.cells) {
        out += csv_row({format_double(c.x), format_double(c.y), to_string(c.label),
                        format_double(c.best_exponent)});
    }
    return out;
}

namespace {

std::string_view label_color(RegionLabel label) {
    switch (label) {
        case RegionLabel::A: return "#8dd3c7";
        case RegionLabel::B: return "#fdd57e";
        case RegionLabel::C: return "#bebada";
        case RegionLabel::CriticalFujita: return "#e41a1c";
        case RegionLabel::CriticalPc: return "#377eb8";
        case RegionLabel::Unclassified: return "#f2f2f2";
    }
    return "#ffffff";
}

struct Frame {
    double left = 70, top = 30, width = 600, height = 450;
    double x0, x1, y0, y1;
    double sx(double x) const { return left + (x - x0) / (x1 - x0) * width; }
    double sy(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }
};

template <typename Curve>
void append_curve(std::string& svg, const Frame& fr, const std::vector<double>& xs, Curve curve,
                  std::string_view color, std::string_view dash) {
    // Split the polyline wherever the curve leaves the frame.
    std::string points;
    auto flush = [&] {
        if (points.find(' ') != std::string::npos) {
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += color;
            svg += "\" stroke-width=\"2\"";
            if (!dash.empty()) {
                svg += " stroke-dasharray=\"";
                svg += dash;
                svg += "\"";
            }
            svg += " points=\"" + points + "\"/>\n";
        }
        points.clear();
    };
    for (double x : xs) {
        const double y = curve(x);
        if (!std::isfinite(y) || y < fr.y0 || y > fr.y1) {
            flush();
            continue;
        }
        if (!points.empty()) {
            points += ' ';
        }
        points += format_fixed(fr.sx(x), 2) + "," + format_fixed(fr.sy(y), 2);
    }
    flush();
}

}  // namespace

std::string region_map_svg(const RegionMap& map, const FigurePreset& preset) {
    const auto xs = map.axis1.samples();
    const auto ys = map.axis2.samples();
    const double dx = map.axis1.step;
    const double dy = map.axis2.step;
    Frame fr;
    fr.x0 = xs.front() - dx / 2;
    fr.x1 = xs.back() + dx / 2;
    fr.y0 = ys.front() - dy / 2;
    fr.y1 = ys.back() + dy / 2;

    const double total_w = fr.left + fr.width + 200;
    const double total_h = fr.top + fr.height + 60;
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_fixed(total_w, 0) +
           "\" height=\"" + format_fixed(total_h, 0) + "\" viewBox=\"0 0 " +
           format_fixed(total_w, 0) + " " + format_fixed(total_h, 0) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    svg += "<g shape-rendering=\"crispEdges\">\n";

    // One rect per horizontal run of equal labels.
    for (std::size_t iy = 0; iy < map.ny; ++iy) {
        std::size_t start = 0;
        for (std::size_t ix = 1; ix <= map.nx; ++ix) {
            if (ix < map.nx && map.at(ix, iy).label == map.at(start, iy).label) {
                continue;
            }
            const double xa = fr.sx(map.at(start, iy).x - dx / 2);
            const double xb = fr.sx(map.at(ix - 1, iy).x + dx / 2);
            const double ya = fr.sy(map.at(start, iy).y + dy / 2);
            const double yb = fr.sy(map.at(start, iy).y - dy / 2);
            svg += "<rect x=\"" + format_fixed(xa, 2) + "\" y=\"" + format_fixed(ya, 2) +
                   "\" width=\"" + format_fixed(xb - xa, 2) + "\" height=\"" +
                   format_fixed(yb - ya, 2) + "\" fill=\"" +
                   std::string(label_color(map.at(start, iy).label)) + "\"/>\n";
            start = ix;
        }
    }
    svg += "</g>\n";

    // Curve overlays: p_F and p_c along the sweep axis.
    if (preset.flrw) {
        const int n = preset.n;
        append_curve(svg, fr, xs, [n](double w) { return fujita(n - 2.0 / (1.0 + w)); },
                     "#000000", "");
        append_curve(svg, fr, xs,
                     [n](double w) { return p_c_flrw(FlrwParams{n, w}).value_or_infinity(); },
                     "#000000", "6,4");
    } else {
        const int n = preset.n;
        const double alpha = preset.alpha;
        const double pf = fujita(n * (1.0 - alpha));
        append_curve(svg, fr, xs, [pf](double) { return pf; }, "#000000", "");
        append_curve(svg, fr, xs,
                     [n, alpha](double mu) { return p_c(ModelParams{n, alpha, mu}).value_or_infinity(); },
                     "#000000", "6,4");
        append_curve(svg, fr, xs,
                     [n, alpha](double mu) { return threshold_wave_intermediate(ModelParams{n, alpha, mu}); },
                     "#444444", "2,3");
        append_curve(svg, fr, xs,
                     [n, alpha](double mu) { return threshold_wave_heat(ModelParams{n, alpha, mu}); },
                     "#444444", "2,3");
    }

    // Frame, ticks, labels.
    svg += "<rect x=\"" + format_fixed(fr.left, 0) + "\" y=\"" + format_fixed(fr.top, 0) +
           "\" width=\"" + format_fixed(fr.width, 0) + "\" height=\"" + format_fixed(fr.height, 0) +
           "\" fill=\"none\" stroke=\"#000000\"/>\n";
    svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = fr.x0 + (fr.x1 - fr.x0) * k / 4.0;
        const double yv = fr.y0 + (fr.y1 - fr.y0) * k / 4.0;
        svg += "<text x=\"" + format_fixed(fr.sx(xv), 2) + "\" y=\"" +
               format_fixed(fr.top + fr.height + 16, 0) + "\" text-anchor=\"middle\">" +
               format_fixed(xv, 2) + "</text>\n";
        svg += "<text x=\"" + format_fixed(fr.left - 6, 0) + "\" y=\"" +
               format_fixed(fr.sy(yv) + 4, 2) + "\" text-anchor=\"end\">" + format_fixed(yv, 2) +
               "</text>\n";
    }
    svg += "<text x=\"" + format_fixed(fr.left + fr.width / 2, 0) + "\" y=\"" +
           format_fixed(fr.top + fr.height + 40, 0) + "\" text-anchor=\"middle\">" +
           map.axis1.name + "</text>\n";
    svg += "<text x=\"20\" y=\"" + format_fixed(fr.top + fr.height / 2, 0) +
           "\" text-anchor=\"middle\">" + map.axis2.name + "</text>\n";

    const RegionLabel legend[] = {RegionLabel::A, RegionLabel::B, RegionLabel::C,
                                  RegionLabel::CriticalFujita, RegionLabel::CriticalPc,
                                  RegionLabel::Unclassified};
    double ly = fr.top + 10;
    const double lx = fr.left + fr.width + 20;
    for (auto label : legend) {
        svg += "<rect x=\"" + format_fixed(lx, 0) + "\" y=\"" + format_fixed(ly, 0) +
               "\" width=\"14\" height=\"14\" fill=\"" + std::string(label_color(label)) +
               "\" stroke=\"#000000\"/>\n";
        svg += "<text x=\"" + format_fixed(lx + 20, 0) + "\" y=\"" + format_fixed(ly + 12, 0) +
               "\">" + std::string(to_string(label)) + " (" +
               std::to_string(map.count(label)) + ")</text>\n";
        ly += 22;
    }
    ly += 10;
    svg += "<text x=\"" + format_fixed(lx, 0) + "\" y=\"" + format_fixed(ly, 0) +
           "\">solid: Fujita exponent</text>\n";
    svg += "<text x=\"" + format_fixed(lx, 0) + "\" y=\"" + format_fixed(ly + 18, 0) +
           "\">dashed: p_c</text>\n";
    if (!preset.flrw) {
        svg += "<text x=\"" + format_fixed(lx, 0) + "\" y=\"" + format_fixed(ly + 36, 0) +
               "\">dotted: crossing curves</text>\n";
    }
    svg += "<text x=\"" + format_fixed(fr.left, 0) + "\" y=\"18\">" + preset.name + ": n=" +
           std::to_string(preset.n) +
           (preset.flrw ? std::string() : ", alpha=" + format_double(preset.alpha)) + "</text>\n";
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace flrw
