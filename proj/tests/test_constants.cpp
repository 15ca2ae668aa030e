#include <doctest.h>

#include <cmath>
#include <cstring>

#include "nsv/constants.hpp"

using namespace nsv;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// Independent second evaluation of the fractional CLR closed form through
// logs, so the two paths share no pow calls.
double frank_log_path(double s) {
    const double p = 3.0 - 2.0 * s;
    const double log_inner = (p / (2.0 * s)) * std::log(9.0 * (3.0 + 2.0 * s) / (p * p)) -
                             std::log(6.0 * kPi * kPi) + std::log(3.0 / p);
    return std::exp((2.0 * s / 3.0) * log_inner + std::log(3.0 / p));
}
}  // namespace

TEST_CASE("closed forms match independently computed 15-digit references") {
    const ConstantSet c = constant_set();
    // References evaluated with 30-digit arithmetic from the same closed forms.
    CHECK(c.c_sob6 == doctest::Approx(0.427260542862526665).epsilon(1e-12));
    CHECK(c.c_sob3 == doctest::Approx(0.653651698431608655).epsilon(1e-12));
    CHECK(c.c_bly == doctest::Approx(3.82831200025092242).epsilon(1e-12));
    CHECK(c.c_lt == doctest::Approx(0.293136460011769146).epsilon(1e-12));
    CHECK(c.l_0_3 == 0.116);
    CHECK(c.c_1_clr == doctest::Approx(1.48425122949517).epsilon(1e-12));
    CHECK(c.c_s_clr_uniform == doctest::Approx(1.90604442968419351).epsilon(1e-12));
}

TEST_CASE("printed-value anchors") {
    const ConstantSet c = constant_set();
    CHECK(std::abs(c.c_1_clr - 1.484251229) < 1e-6);
    CHECK(std::abs(c.c_s_clr_uniform - 1.906044430) < 1e-6);
}

TEST_CASE("structural invariants") {
    const ConstantSet c = constant_set();
    CHECK(c.c_sob3 <= std::sqrt(c.c_sob6) * (1.0 + 1e-15));
    CHECK(c.c_1_clr <= c.c_s_clr_uniform);
    for (double v : {c.c_sob6, c.c_sob3, c.c_bly, c.c_lt, c.c_1_clr, c.c_s_clr_uniform, c.l_0_3})
        CHECK(v > 0.0);
}

TEST_CASE("constants are bit-identical across calls") {
    const ConstantSet a = constant_set();
    const ConstantSet b = constant_set();
    CHECK(std::memcmp(&a, &b, sizeof(ConstantSet)) == 0);
}

TEST_CASE("pointwise form: grid max at s = 0.5 equals the uniform constant") {
    const ConstantSet c = constant_set();
    double best = -1.0, arg = -1.0;
    for (int i = 0; i <= 50; ++i) {
        const double s = 0.5 + 0.01 * i;
        const double v = c_s_clr(s, ClrMode::FrankPointwise);
        if (v > best) {
            best = v;
            arg = s;
        }
    }
    CHECK(arg == 0.5);
    CHECK(std::abs(best - c.c_s_clr_uniform) < 1e-9);
}

TEST_CASE("pointwise form agrees with an independent log-path evaluation") {
    for (double s : {0.5, 0.6, 0.75, 0.9, 1.0}) {
        const double a = c_s_clr(s, ClrMode::FrankPointwise);
        CHECK(std::abs(a - frank_log_path(s)) < 1e-10 * a);
    }
    // 30-digit reference values of the closed form.
    CHECK(c_s_clr(0.75, ClrMode::FrankPointwise) ==
          doctest::Approx(1.55939360246735222).epsilon(1e-12));
    CHECK(c_s_clr(1.0, ClrMode::FrankPointwise) ==
          doctest::Approx(1.46096204028050949).epsilon(1e-12));
}

TEST_CASE("mode dispatch and domain validation") {
    const ConstantSet c = constant_set();
    CHECK(c_s_clr(0.6, ClrMode::Uniform) == c.c_s_clr_uniform);
    // The pointwise form never exceeds its interval maximum, so best equals it
    // away from s = 1...
    CHECK(c_s_clr(0.6, ClrMode::Best) == c_s_clr(0.6, ClrMode::FrankPointwise));
    // ...and at s = 1 the minimum over {pointwise, uniform, c_1_clr} is still
    // the pointwise value (1.46096 < 1.48425).
    CHECK(c_s_clr(1.0, ClrMode::Best) == c_s_clr(1.0, ClrMode::FrankPointwise));
    CHECK_THROWS_AS(c_s_clr(0.4, ClrMode::Uniform), std::invalid_argument);
    CHECK_THROWS_AS(c_s_clr(1.1, ClrMode::Best), std::invalid_argument);
}
