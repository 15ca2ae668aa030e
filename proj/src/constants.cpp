#include "nsv/constants.hpp"

#include <algorithm>
#include <cmath>

namespace nsv {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double frank_pointwise(double s) {
    // Bracketed closed form for the fractional CLR constant in d = 3:
    //   [ ( (9(3+2s)/(3-2s)^2)^{(3-2s)/(2s)} * 1/(6 pi^2) * 3/(3-2s) )^{2s/3} * 3/(3-2s) ].
    // Decreasing on [1/2,1]; at s = 1/2 it equals (9/4) 6^{1/3} / pi^{2/3}.
    const double p = 3.0 - 2.0 * s;
    const double inner =
        std::pow(9.0 * (3.0 + 2.0 * s) / (p * p), p / (2.0 * s)) / (6.0 * kPi * kPi) * 3.0 / p;
    return std::pow(inner, 2.0 * s / 3.0) * 3.0 / p;
}
}  // namespace

ConstantSet constant_set() {
    ConstantSet c;
    c.c_sob6 = (1.0 / std::sqrt(3.0)) * std::pow(2.0 / kPi, 2.0 / 3.0);
    c.c_sob3 = std::sqrt(c.c_sob6);
    c.c_bly = 0.4 * std::pow(3.0 * kPi * kPi, 2.0 / 3.0);
    c.c_lt = (5.0 / 6.0) * (std::cbrt(2.0) / std::pow(kPi, 4.0 / 3.0)) * std::pow(1.456, 2.0 / 3.0);
    c.l_0_3 = 0.116;  // printed truncation of 6.8693/(6 pi^2) = 0.1160009...
    c.c_1_clr = 3.0 * std::pow(3.0 * c.l_0_3, 2.0 / 3.0);
    c.c_s_clr_uniform = 2.25 * std::cbrt(6.0) / std::pow(kPi, 2.0 / 3.0);
    return c;
}

double c_s_clr(double s, ClrMode mode) {
    if (!(s >= 0.5 && s <= 1.0))
        throw std::invalid_argument("c_s_clr: s must lie in [1/2, 1]");
    const ConstantSet c = constant_set();
    switch (mode) {
        case ClrMode::FrankPointwise:
            return frank_pointwise(s);
        case ClrMode::Uniform:
            return c.c_s_clr_uniform;
        case ClrMode::Best: {
            double best = std::min(frank_pointwise(s), c.c_s_clr_uniform);
            if (s == 1.0) best = std::min(best, c.c_1_clr);
            return best;
        }
    }
    throw std::invalid_argument("c_s_clr: unknown mode");
}

}  // namespace nsv
