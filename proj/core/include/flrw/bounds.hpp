#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "flrw/exponents.hpp"

namespace flrw {

enum class BoundKind {
    HeatlikeSub,
    WavelikeSub,
    IntermediateSub,
    CriticalFujitaMuLow,
    CriticalFujitaMuHigh,
    CriticalPc,
    NoneKnown,
};

enum class BoundForm { power, exp_power };

std::string_view to_string(BoundKind kind);
std::string_view to_string(BoundForm form);

/// T_eps <= C eps^{-e}  (power)  or  T_eps <= exp(C eps^{-e})  (exp_power).
struct LifespanBound {
    BoundKind kind = BoundKind::NoneKnown;
    BoundForm form = BoundForm::power;
    double eps_exponent = 0.0;  // NaN when not applicable
    bool applicable = false;
};

enum class RegionLabel { A, B, C, CriticalFujita, CriticalPc, Unclassified };

std::string_view to_string(RegionLabel label);

/// Absolute tolerance for "p lies on a critical curve".
inline constexpr double kCriticalTolerance = 1e-9;

/// Heat-like bound, valid for 1 < p < p_F(n(1-alpha)):
///   e = (p-1) / (2 - n(1-alpha)(p-1)).
LifespanBound heatlike_exponent(const ModelParams& params, double p);

/// Wave-like bound, valid for 1 < p < p_c (gamma > 0):
///   e = 2p(p-1) / ((1-alpha) gamma(n,p,alpha,mu)).
LifespanBound wavelike_exponent(const ModelParams& params, double p);

/// Bound valid for 1 < p < 1 + 2/(n(1-alpha)+mu-1):
///   e = (p-1) / (2 - (n(1-alpha)+mu-1)(p-1)).
LifespanBound intermediate_exponent(const ModelParams& params, double p);

/// Exp-type bounds that apply when p sits on p_F(n(1-alpha)) or on p_c
/// (the latter only when p_c > p_F). Empty when p is not critical.
std::vector<LifespanBound> critical_bounds(const ModelParams& params, double p);

/// Crossing points of the three power-type exponents. Return +inf when the
/// denominator is nonpositive.
double threshold_wave_intermediate(const ModelParams& params);  // 2(1-a)/(n(1-a)+mu-1)
double threshold_wave_heat(const ModelParams& params);          // 2(1-a)/(n(1-a)-mu+1)

RegionLabel classify(const ModelParams& params, double p);

/// Bound attached to a label: the region's power bound, the sharpest of the
/// exp bounds on critical curves, or an inapplicable NoneKnown bound.
LifespanBound labeled_bound(const ModelParams& params, double p, RegionLabel label);

struct AxisSpec {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    double step = 0.0;
    bool include_min = true;

    /// min + k*step for k = (include_min ? 0 : 1), ... while <= max.
    std::vector<double> samples() const;
};

struct RegionCell {
    double x = 0.0;
    double y = 0.0;
    RegionLabel label = RegionLabel::Unclassified;
    double best_exponent = 0.0;
};

/// Label grid over (axis1, axis2); cells stored row-major with axis2 (p) as
/// the slow index.
struct RegionMap {
    AxisSpec axis1;
    AxisSpec axis2;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<RegionCell> cells;

    const RegionCell& at(std::size_t ix, std::size_t iy) const { return cells[iy * nx + ix]; }
    std::size_t count(RegionLabel label) const;
};

/// (mu, p) sweep at fixed (n, alpha).
RegionMap region_map_mu_p(int n, double alpha, const AxisSpec& mu_axis, const AxisSpec& p_axis);

/// (w, p) sweep at fixed n, through flrw_to_model.
RegionMap region_map_w_p(int n, const AxisSpec& w_axis, const AxisSpec& p_axis);

/// Presets reproducing the two published phase diagrams.
struct FigurePreset {
    std::string name;
    bool flrw = false;
    int n = 2;
    double alpha = 0.0;
    AxisSpec axis1;
    AxisSpec axis2;
};

FigurePreset figure_preset(std::string_view name);
RegionMap build_map(const FigurePreset& preset);

/// CSV with header axis1,axis2,label,best_exponent.
std::string region_map_csv(const RegionMap& map);

/// Self-contained SVG heatmap with curve overlays and legend.
std::string region_map_svg(const RegionMap& map, const FigurePreset& preset);

}  // namespace flrw
