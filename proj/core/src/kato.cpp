#include "flrw/kato.hpp"

#include <cmath>
#include <limits>

#include "flrw/errors.hpp"
#include "flrw/format.hpp"

namespace flrw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) {
        throw DomainError(msg);
    }
}

// Time-argument conditions T >= T1 > T0 >= 1 shared by both lemmas.
void check_times(double T0, double T1) {
    require(T0 >= 1.0, "T0 must be >= 1");
    require(T1 > T0, "T1 must exceed T0");
}

double shift_constant(const KatoCriticalParams& kc) {
    return kc.mu_case() == MuCase::le_one ? 2.0 : 1.0;
}

}  // namespace

void KatoSubcriticalParams::validate() const {
    require(p > 1.0, "p must be > 1");
    require(a >= 0.0, "a must be >= 0");
    require(b > 0.0, "b must be > 0");
    require(q > 0.0, "q must be > 0");
    require(mu >= 0.0, "mu must be >= 0");
    require(A0 > 0.0 && A1 > 0.0 && R > 0.0, "A0, A1, R must be positive");
    check_times(T0, T1);
    require(M() > 0.0, "lemma inapplicable: M = (p-1)(b-a) - q + 2 must be > 0, got " +
                           format_double(M()));
}

SubcriticalThreshold subcritical_threshold(const KatoSubcriticalParams& kp) {
    kp.validate();
    SubcriticalThreshold out;
    out.exponent = -(kp.p - 1.0) / kp.M();
    out.scale = std::pow(kp.A0, out.exponent);
    return out;
}

KatoSubcriticalParams heatlike_wiring(const ModelParams& params, double p, double A0) {
    params.validate();
    KatoSubcriticalParams kp;
    kp.p = p;
    kp.q = params.effective_dimension() * (p - 1.0);
    kp.a = params.mu + kp.q;
    kp.b = params.mu + 2.0;
    kp.mu = params.mu;
    kp.A0 = A0;
    return kp;
}

double wired_eps_exponent(const KatoSubcriticalParams& kp) {
    kp.validate();
    return -kp.p * (kp.p - 1.0) / kp.M();
}

std::string_view to_string(MuCase c) {
    return c == MuCase::le_one ? "le_one" : "gt_one";
}

void KatoCriticalParams::validate() const {
    require(p > 1.0, "p must be > 1");
    require(b > 0.0, "b must be > 0");
    require(mu >= 0.0, "mu must be >= 0");
    require(A0 > 0.0 && A1 > 0.0 && R > 0.0, "A0, A1, R must be positive");
    check_times(T0, T1);
}

double aux_sequence(int j) {
    return 2.0 - std::ldexp(1.0, -j);
}

SequenceTable iterate_sequences(const KatoCriticalParams& kc, int j_max, double C_R) {
    kc.validate();
    require(j_max >= 0, "j_max must be >= 0");
    require(C_R > 0.0, "C_R must be positive");

    const bool high = kc.mu_case() == MuCase::gt_one;
    const double c = shift_constant(kc);
    const double log_gain = std::log(kc.A1 * C_R);
    const double log_two_thirds = std::log(2.0 / 3.0);
    const double log2 = std::log(2.0);

    SequenceTable table;
    table.states.reserve(static_cast<std::size_t>(j_max) + 1);
    KatoState s{0, kc.b, std::log(kc.A0), std::nullopt};
    if (high) {
        s.a = aux_sequence(0);
    }
    table.states.push_back(s);
    for (int j = 0; j < j_max; ++j) {
        const KatoState& cur = table.states.back();
        const double next_b = kc.p * cur.b + c;
        double next_logC = log_gain + kc.p * cur.log_C;
        if (high) {
            next_logC += kc.mu * log_two_thirds - log2 - std::log(next_b) - (j + 1) * log2;
        } else {
            next_logC -= 2.0 * std::log(next_b);
        }
        if (!std::isfinite(next_b) || !std::isfinite(next_logC)) {
            table.truncated = true;
            break;
        }
        KatoState nxt{j + 1, next_b, next_logC, std::nullopt};
        if (high) {
            nxt.a = aux_sequence(j + 1);
        }
        table.states.push_back(nxt);
    }
    return table;
}

double closed_form_b(const KatoCriticalParams& kc, int j) {
    kc.validate();
    require(j >= 0, "j must be >= 0");
    const double shift = shift_constant(kc) / (kc.p - 1.0);
    return std::pow(kc.p, j) * (kc.b + shift) - shift;
}

double weighted_geometric_sum(double p) {
    if (!(p > 1.0)) {
        throw DomainError("sum k/p^k diverges for p <= 1");
    }
    return p / ((p - 1.0) * (p - 1.0));
}

EnvelopeConstants compute_E(const KatoCriticalParams& kc, double C_R) {
    kc.validate();
    require(C_R > 0.0, "C_R must be positive");
    const double p = kc.p;
    const double sum = weighted_geometric_sum(p);
    EnvelopeConstants out;
    if (kc.mu_case() == MuCase::le_one) {
        const double base = kc.b + 2.0 / (p - 1.0);
        out.B = kc.A1 * C_R / (base * base);
        out.E = std::min(0.0, std::log(out.B)) / (p - 1.0) - 2.0 * sum * std::log(p) +
                std::log(kc.A0);
    } else {
        const double base = kc.b + 1.0 / (p - 1.0);
        out.B = kc.A1 * C_R * std::pow(2.0 / 3.0, kc.mu) / (2.0 * base);
        out.E = std::min(0.0, std::log(out.B)) / (p - 1.0) - sum * std::log(2.0 * p) +
                std::log(kc.A0);
    }
    return out;
}

CriticalThreshold critical_threshold(const KatoCriticalParams& kc) {
    kc.validate();
    CriticalThreshold out;
    out.exponent = -(kc.p - 1.0) / (kc.b * (kc.p - 1.0) + shift_constant(kc));
    out.threshold = std::exp(std::pow(kc.A0, out.exponent));
    return out;
}

double envelope_bracket(const KatoCriticalParams& kc, double E, double t) {
    const double c = shift_constant(kc);
    const double t_ref = kc.mu_case() == MuCase::le_one ? kc.T1 : 2.0 * kc.T1;
    const double inner = std::log(t / t_ref);
    if (!(inner > 0.0)) {
        return -std::numeric_limits<double>::infinity();
    }
    return E + (kc.b + c / (kc.p - 1.0)) * std::log(inner);
}

EnvelopeReport envelope_divergence(const KatoCriticalParams& kc, double C_R,
                                   const EnvelopeOptions& opts) {
    const EnvelopeConstants ec = compute_E(kc, C_R);
    require(opts.delta > 0.0, "delta must be positive");
    require(opts.points_per_decade > 0, "points_per_decade must be positive");

    EnvelopeReport rep;
    rep.E = ec.E;
    rep.B = ec.B;
    rep.t_start = kc.mu_case() == MuCase::le_one ? kc.T1 : 2.0 * kc.T1;
    const long last = static_cast<long>(std::floor(opts.max_decades * opts.points_per_decade));
    const double log10_start = std::log10(rep.t_start);
    rep.horizon = std::pow(10.0, log10_start + static_cast<double>(last) / opts.points_per_decade);
    for (long k = 1; k <= last; ++k) {
        const double t = std::pow(10.0, log10_start + static_cast<double>(k) / opts.points_per_decade);
        if (!std::isfinite(t)) {
            break;
        }
        const double br = envelope_bracket(kc, ec.E, t);
        if (br >= opts.delta) {
            rep.found = true;
            rep.t_star = t;
            rep.delta_margin = br;
            return rep;
        }
    }
    return rep;
}

std::optional<int> detect_envelope_start(const SequenceTable& table,
                                         const KatoCriticalParams& kc, double E, double slack) {
    std::optional<int> start;
    for (const auto& s : table.states) {
        const double pj = std::pow(kc.p, s.j);
        const bool ok = s.log_C - E * pj >= -slack * pj;
        if (ok && !start) {
            start = s.j;
        } else if (!ok) {
            start.reset();
        }
    }
    return start;
}

std::string sequence_table_csv(const SequenceTable& table) {
    std::string out = "j,b_j,log_C_j,a_j\n";
    for (const auto& s : table.states) {
        out += csv_row({std::to_string(s.j), format_double(s.b), format_double(s.log_C),
                        s.a ? format_double(*s.a) : std::string()});
    }
    return out;
}

}  // namespace flrw
