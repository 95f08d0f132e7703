#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flrw/exponents.hpp"

namespace flrw {

/// Hypotheses of the power-type comparison lemma:
///   F(t) >= A0 t^{-a} (t - T1)^b,   F'' + mu F'/t >= A1 (t+R)^{-q} |F|^p,
///   F(T0) >= 0,  F'(T0) > 0.
struct KatoSubcriticalParams {
    double p = 2.0;
    double a = 0.0;
    double b = 1.0;
    double q = 1.0;
    double mu = 0.0;
    double A0 = 1.0;
    double A1 = 1.0;
    double R = 1.0;
    double T0 = 1.0;
    double T1 = 2.0;

    /// (p-1)(b-a) - q + 2.
    double M() const { return (p - 1.0) * (b - a) - q + 2.0; }

    /// Throws DomainError on p <= 1, a < 0, b <= 0, q <= 0, mu < 0,
    /// nonpositive A0/A1/R, T1 <= T0 or T0 < 1, and M <= 0.
    void validate() const;
};

/// T < C * A0^{exponent}. C is not determined here, so `scale` is
/// A0^{exponent} with the constant set to 1.
struct SubcriticalThreshold {
    double exponent = 0.0;  // -(p-1)/M
    double scale = 0.0;
    bool normalized = false;
};

SubcriticalThreshold subcritical_threshold(const KatoSubcriticalParams& kp);

/// Lemma parameters produced by integrating the equation over space at
/// 1 < p < p_F(n(1-alpha)): q = n(1-alpha)(p-1), a = mu + q, b = mu + 2.
KatoSubcriticalParams heatlike_wiring(const ModelParams& params, double p, double A0);

/// Exponent of eps in the lifespan bound when A0 = C eps^p: -p(p-1)/M.
double wired_eps_exponent(const KatoSubcriticalParams& kp);

enum class MuCase { le_one, gt_one };

std::string_view to_string(MuCase c);

/// Hypotheses of the log-type lemma (q = 2):
///   F(t) >= A0 (ln(t/T1))^b.
struct KatoCriticalParams {
    double p = 2.0;
    double b = 1.0;
    double mu = 0.0;
    double A0 = 1.0;
    double A1 = 1.0;
    double R = 1.0;
    double T0 = 1.0;
    double T1 = 2.0;

    MuCase mu_case() const { return mu <= 1.0 ? MuCase::le_one : MuCase::gt_one; }
    void validate() const;
};

/// One row of the iteration. log_C keeps C_j in log-space since C_j grows
/// doubly exponentially; `a` is the auxiliary sequence 1 + 1/2 + ... + 2^{-j},
/// only used when mu > 1.
struct KatoState {
    int j = 0;
    double b = 0.0;
    double log_C = 0.0;
    std::optional<double> a;
};

struct SequenceTable {
    std::vector<KatoState> states;
    bool truncated = false;  // b_j or log C_j left the representable range
};

/// b_0 = b, C_0 = A0 and
///   mu <= 1: b_{j+1} = p b_j + 2, C_{j+1} = A1 C_R C_j^p / (p b_j + 2)^2
///   mu >  1: b_{j+1} = p b_j + 1, C_{j+1} = A1 C_R (2/3)^mu C_j^p / (2 (p b_j + 1) 2^{j+1})
SequenceTable iterate_sequences(const KatoCriticalParams& kc, int j_max, double C_R = 1.0);

/// p^j (b + c/(p-1)) - c/(p-1) with c = 2 (mu <= 1) or 1 (mu > 1).
double closed_form_b(const KatoCriticalParams& kc, int j);

/// 1 + 1/2 + ... + 2^{-j} = 2 - 2^{-j}.
double aux_sequence(int j);

/// sum_{k>=0} k / p^k = p / (p-1)^2.
double weighted_geometric_sum(double p);

struct EnvelopeConstants {
    double B = 0.0;
    double E = 0.0;
};

EnvelopeConstants compute_E(const KatoCriticalParams& kc, double C_R = 1.0);

/// exp(C A0^{exponent}) with C set to 1.
struct CriticalThreshold {
    double exponent = 0.0;  // -(p-1)/(b(p-1)+2) or -(p-1)/(b(p-1)+1)
    double threshold = 0.0;
};

CriticalThreshold critical_threshold(const KatoCriticalParams& kc);

/// Bracket E + (b + c/(p-1)) ln ln(t / T*) whose positivity makes the lower
/// envelope diverge as j grows (T* = T1 for mu <= 1 and 2 T1 for mu > 1).
double envelope_bracket(const KatoCriticalParams& kc, double E, double t);

struct EnvelopeOptions {
    double delta = 1e-3;
    int points_per_decade = 64;
    double max_decades = 300.0;  // search horizon above the start time
};

struct EnvelopeReport {
    bool found = false;
    double t_star = 0.0;
    double E = 0.0;
    double B = 0.0;
    double delta_margin = 0.0;  // bracket value at t_star
    double t_start = 0.0;
    double horizon = 0.0;
};

/// First t on the log grid t_start * 10^{k/points_per_decade} with
/// bracket >= delta.
EnvelopeReport envelope_divergence(const KatoCriticalParams& kc, double C_R = 1.0,
                                   const EnvelopeOptions& opts = {});

/// First index j0 from which log C_j >= E p^j - slack p^j holds through the
/// end of the table; nullopt if it never settles.
std::optional<int> detect_envelope_start(const SequenceTable& table,
                                         const KatoCriticalParams& kc, double E,
                                         double slack = 1e-9);

/// CSV: j,b_j,log_C_j,a_j (a_j empty for mu <= 1).
std::string sequence_table_csv(const SequenceTable& table);

}  // namespace flrw
