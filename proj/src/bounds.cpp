#include "nsv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace nsv {

namespace {

void validate_pair(const DimensionlessPair& pair) {
    if (!(pair.grashof >= 0.0)) throw std::invalid_argument("bounds: G must be nonnegative");
    if (!(pair.g1 > 0.0)) throw std::invalid_argument("bounds: G1 must be positive");
}

void validate_s(double s) {
    if (!(s >= 0.5 && s <= 1.0)) throw std::invalid_argument("bounds: s must lie in [1/2, 1]");
}

// (1 + C_BLY^s G1^s) / G1^s, the regularization factor shared by est1/est2/est_mid.
double reg_factor(const ConstantSet& c, double s, double g1) {
    const double g1s = std::pow(g1, s);
    return (1.0 + std::pow(c.c_bly, s) * g1s) / g1s;
}

std::string format_gate(double lhs, double rhs) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "G1^3*G^4 = %.17g vs rhs = %.17g", lhs, rhs);
    return buf;
}

}  // namespace

const char* theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::Est1: return "est1";
        case TheoremId::Est2: return "est2";
        case TheoremId::EstMid: return "est_mid";
        case TheoremId::Est3: return "est3";
    }
    return "?";
}

DimensionlessPair grashof_numbers(const PhysicalParams& params, const SpectralDomain& domain) {
    if (!(params.nu > 0.0)) throw std::invalid_argument("grashof_numbers: nu must be positive");
    if (!(params.alpha > 0.0)) throw std::invalid_argument("grashof_numbers: alpha must be positive");
    double h2 = 0.0;
    for (double h : params.forcing) h2 += h * h;
    DimensionlessPair pair;
    pair.grashof = std::sqrt(domain.volume()) * std::sqrt(h2) / (params.nu * params.nu);
    pair.g1 = params.alpha * std::pow(domain.volume(), -2.0 / 3.0);
    return pair;
}

BoundReport bound_minmax_only(double s, const DimensionlessPair& pair) {
    validate_s(s);
    validate_pair(pair);
    BoundReport r;
    r.theorem_id = TheoremId::Est1;
    r.constants = constant_set();
    r.clr_mode = ClrMode::Uniform;  // est1 does not use a CLR constant at all
    const ConstantSet& c = r.constants;
    const double prefactor =
        2.5 * std::pow(c.c_sob6, 3.0) * std::pow(c.c_bly, -1.5 - s);
    r.value = std::pow(prefactor, 3.0) * std::pow(reg_factor(c, s, pair.g1), 3.0) *
              std::pow(pair.grashof, 6.0);
    return r;
}

BoundReport bound_clr(double s, const DimensionlessPair& pair) {
    validate_s(s);
    validate_pair(pair);
    BoundReport r;
    r.constants = constant_set();
    r.clr_mode = ClrMode::Uniform;
    const ConstantSet& c = r.constants;
    const double cs = c_s_clr(s, ClrMode::Uniform);
    const double reg = std::pow(reg_factor(c, s, pair.g1), 1.5);

    const auto est2 = [&] {
        const double prefactor = (5.0 / 3.0) * std::sqrt(2.0 / 3.0) * cs * std::pow(c.c_bly, -1.5);
        return std::pow(prefactor, 1.5) * reg * std::pow(pair.grashof, 1.5);
    };
    const auto est_mid = [&] {
        const double prefactor = (5.0 / 3.0) * std::pow(2.0 / 3.0, 2.0 * (1.0 - s)) * cs *
                                 std::pow(c.c_bly, 2.0 * s - 3.0) *
                                 std::pow(c.c_sob6, 6.0 - 8.0 * s);
        return std::pow(prefactor, 1.5) * reg * std::pow(pair.grashof, 6.0 * (1.0 - s));
    };

    if (s > 0.75) {
        r.theorem_id = TheoremId::Est2;
        r.value = est2();
    } else if (s < 0.75) {
        r.theorem_id = TheoremId::EstMid;
        r.value = est_mid();
    } else {
        r.theorem_id = TheoremId::Est2;
        r.value = est2();
        r.companion_value = est_mid();
    }
    return r;
}

BoundReport bound_small_alpha(const DimensionlessPair& pair) {
    validate_pair(pair);
    BoundReport r;
    r.theorem_id = TheoremId::Est3;
    r.constants = constant_set();
    r.clr_mode = ClrMode::Best;  // C_{1,CLR} at s = 1
    const ConstantSet& c = r.constants;

    const double lhs = std::pow(pair.g1, 3.0) * std::pow(pair.grashof, 4.0);
    const double rhs = std::pow(0.45, 2.0) * std::pow(c.c_bly, -1.0 / 3.0) / c.c_lt *
                       std::pow(c.c_sob6, -2.0) * std::pow(c.c_1_clr, -4.0 / 3.0);
    r.applicable = (lhs <= rhs);
    r.gate_detail = format_gate(lhs, rhs);

    const double prefactor = (20.0 / 9.0) * std::pow(c.c_bly, -2.0) * std::sqrt(c.c_lt) *
                             c.c_sob6 * std::pow(c.c_1_clr, 2.0 / 3.0);
    r.value = std::pow(prefactor, 9.0 / 13.0) * std::pow(pair.g1, -6.0 / 13.0) *
              std::pow(pair.grashof, 18.0 / 13.0);
    return r;
}

BoundReport best_bound(double s, const DimensionlessPair& pair) {
    validate_s(s);
    BoundReport best = bound_minmax_only(s, pair);
    const BoundReport clr = bound_clr(s, pair);
    if (clr.value < best.value) best = clr;
    if (s == 1.0) {
        const BoundReport small = bound_small_alpha(pair);
        if (small.applicable && small.value < best.value) best = small;
    }
    return best;
}

}  // namespace nsv
