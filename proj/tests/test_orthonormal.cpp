#include <doctest.h>

#include <cmath>
#include <cstring>

#include "nsv/constants.hpp"
#include "nsv/kernels.hpp"
#include "nsv/orthonormal.hpp"
#include "nsv/rng.hpp"

using namespace nsv;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double weighted_dot(const std::vector<double>& a, const std::vector<double>& b,
                    const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i];
    return s;
}
}  // namespace

TEST_CASE("random_orthonormal: Gram = I in every metric, deterministic per seed") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    const MetricSpec metrics[] = {MetricSpec::l2(), MetricSpec::h1(), MetricSpec::hsa(0.6),
                                  MetricSpec::vs_alpha(0.7, 0.9)};
    for (const MetricSpec& metric : metrics) {
        const OrthFamily fam = random_orthonormal(d, 12, metric, 2025);
        const std::vector<double> w = metric_weights(d, metric);
        for (int i = 0; i < fam.n(); ++i)
            for (int j = 0; j <= i; ++j) {
                const double g = weighted_dot(fam.vectors[i], fam.vectors[j], w);
                CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-12);
            }
        const OrthFamily again = random_orthonormal(d, 12, metric, 2025);
        for (int i = 0; i < fam.n(); ++i)
            CHECK(std::memcmp(fam.vectors[i].data(), again.vectors[i].data(),
                              sizeof(double) * d.mode_count()) == 0);
    }
    CHECK_THROWS_AS(random_orthonormal(d, d.mode_count() + 1, MetricSpec::l2(), 1),
                    std::invalid_argument);
}

TEST_CASE("is_suborthonormal: scaling behavior") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    OrthFamily fam = random_orthonormal(d, 8, MetricSpec::l2(), 7);
    const SubOrthResult ortho = is_suborthonormal(d, fam);
    CHECK(ortho.ok);
    CHECK(ortho.max_gram_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));

    OrthFamily doubled = fam;
    for (auto& v : doubled.vectors)
        for (double& x : v) x *= 2.0;
    const SubOrthResult big = is_suborthonormal(d, doubled);
    CHECK(!big.ok);
    CHECK(big.max_gram_eigenvalue == doctest::Approx(4.0).epsilon(1e-12));

    OrthFamily halved = fam;
    for (auto& v : halved.vectors)
        for (double& x : v) x *= 0.5;
    CHECK(is_suborthonormal(d, halved).ok);
}

TEST_CASE("weighted-sum closure: orthonormal in a1^2 L2 + a2^2 H1 gives suborthonormal parts") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    SplitMix64 rng(909);
    const std::vector<double> l2w = metric_weights(d, MetricSpec::l2());
    const std::vector<double> h1w = metric_weights(d, MetricSpec::h1());
    for (int trial = 0; trial < 50; ++trial) {
        const double a1 = 0.1 + 2.0 * rng.next_unit();
        const double a2 = 0.1 + 2.0 * rng.next_unit();
        std::vector<double> w(d.mode_count());
        for (int i = 0; i < d.mode_count(); ++i) w[i] = a1 * a1 * l2w[i] + a2 * a2 * h1w[i];

        std::vector<std::vector<double>> raw(6, std::vector<double>(d.mode_count()));
        for (auto& v : raw)
            for (double& x : v) x = rng.next_gaussian();
        const auto fam = orthonormalize(raw, w);

        auto scaled = fam;
        for (auto& v : scaled)
            for (double& x : v) x *= a1;
        CHECK(max_gram_eigenvalue(scaled, l2w) <= 1.0 + 1e-12);
        scaled = fam;
        for (auto& v : scaled)
            for (double& x : v) x *= a2;
        CHECK(max_gram_eigenvalue(scaled, h1w) <= 1.0 + 1e-12);
    }
}

TEST_CASE("rho_norms: Gram-trace identity and the single-mode closed form") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    const int grid = 4 * d.kmax() + 1;

    OrthFamily one;
    one.metric = MetricSpec::l2();
    one.vectors.assign(1, std::vector<double>(d.mode_count(), 0.0));
    one.vectors[0][0] = 1.0;
    const RhoNorms single = rho_norms(d, one, grid);
    CHECK(single.integral == doctest::Approx(1.0).epsilon(1e-10));
    // rho = (2/V) cos^2: ||rho||_{L^2} = sqrt(3/(2V)), exact quadrature.
    CHECK(single.l2 == doctest::Approx(std::sqrt(1.5 / d.volume())).epsilon(1e-12));
    CHECK(single.grad_sum == doctest::Approx(d.eigenvalues()[0]).epsilon(1e-14));

    const OrthFamily fam = random_orthonormal(d, 9, MetricSpec::l2(), 31);
    const RhoNorms norms = rho_norms(d, fam, grid);
    CHECK(norms.integral == doctest::Approx(9.0).epsilon(1e-10));

    // Suborthonormal scaled family: int rho = Gram trace = 0.49 N.
    OrthFamily scaled = fam;
    for (auto& v : scaled.vectors)
        for (double& x : v) x *= 0.7;
    CHECK(rho_norms(d, scaled, grid).integral == doctest::Approx(0.49 * 9.0).epsilon(1e-10));

    CHECK_THROWS_AS(rho_norms(d, fam, grid - 1), std::invalid_argument);
}

TEST_CASE("rho_norms: serial and parallel plane sums are bit-identical") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    const OrthFamily fam = random_orthonormal(d, 6, MetricSpec::l2(), 77);
    kernels::force_serial(true);
    const RhoNorms a = rho_norms(d, fam, 13);
    kernels::force_serial(false);
    const RhoNorms b = rho_norms(d, fam, 13);
    CHECK(a.l2 == b.l2);
    CHECK(a.l3 == b.l3);
    CHECK(a.integral == b.integral);
    for (int i = 0; i < 6; ++i) CHECK(a.theta_l3_sq[i] == b.theta_l3_sq[i]);
}

TEST_CASE("L3 quadrature: doubling an adequate grid moves |theta|^3 by < 1e-8") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 1);
    const OrthFamily fam = random_orthonormal(d, 1, MetricSpec::l2(), 500);
    const RhoNorms coarse = rho_norms(d, fam, 161);
    const RhoNorms fine = rho_norms(d, fam, 322);
    CHECK(std::abs(coarse.theta_l3_sq[0] - fine.theta_l3_sq[0]) < 1e-8);
    CHECK(std::abs(coarse.l3 - fine.l3) < 1e-10);  // rho^3 already exact at 161
}

TEST_CASE("check_lt: orthonormal families, scaling direction, campaign") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    const OrthFamily fam = random_orthonormal(d, 16, MetricSpec::l2(), 606);
    const double margin = check_lt(d, fam);
    CHECK(margin > 0.0);

    // Scaling by 1/2 keeps suborthonormality; LHS scales by 1/4 while the RHS
    // scales by 4^{-3/4} > 1/4, so the margin grows.
    OrthFamily half = fam;
    for (auto& v : half.vectors)
        for (double& x : v) x *= 0.5;
    CHECK(check_lt(d, half) > margin * 0.25);

    // Lowest-eigenmode structured probe.
    OrthFamily eig;
    eig.metric = MetricSpec::l2();
    eig.vectors.assign(16, std::vector<double>(d.mode_count(), 0.0));
    for (int i = 0; i < 16; ++i) eig.vectors[i][i] = 1.0;
    CHECK(std::isfinite(check_lt(d, eig)));

    const CampaignReport campaign = lt_campaign(d, 50, 12345, 32);
    CHECK(campaign.violations.empty());
    CHECK(campaign.min_margin > 0.0);

    OrthFamily bad = fam;
    for (auto& v : bad.vectors)
        for (double& x : v) x *= 2.0;
    CHECK_THROWS_AS(check_lt(d, bad), std::invalid_argument);
}

TEST_CASE("check_clr: single-mode closed forms and branch dispatch") {
    const SpectralDomain d = SpectralDomain::torus(kPi, 1);  // lambda_1 = 4
    const double lam = d.eigenvalues()[0];
    const double v = d.volume();
    for (double s : {0.75, 1.0}) {
        OrthFamily fam;
        fam.metric = MetricSpec::hsa(s);
        fam.vectors.assign(1, std::vector<double>(d.mode_count(), 0.0));
        fam.vectors[0][0] = std::pow(lam, -s / 2.0);
        const ClrMargins got = check_clr(d, fam, s);
        const double rho_l2 = std::pow(lam, -s) * std::sqrt(1.5 / v);
        CHECK(got.rho_l2 == doctest::Approx(rho_l2).epsilon(1e-12));
        REQUIRE(got.big_branch.has_value());
        const double big_expected =
            c_s_clr(s, ClrMode::Uniform) * std::pow(v, 2.0 * s / 3.0 - 0.5) - rho_l2;
        CHECK(std::abs(*got.big_branch - big_expected) < 1e-10);
        if (s == 0.75) {
            REQUIRE(got.small_branch.has_value());
            // At the branch point both reduce to C_{s,CLR} N^{1/2} - ||rho||.
            CHECK(std::abs(*got.small_branch - *got.big_branch) < 1e-12);
        }
    }
    const SpectralDomain d2 = SpectralDomain::torus(2.0 * kPi, 2);
    const OrthFamily lo = random_orthonormal(d2, 5, MetricSpec::hsa(0.6), 3);
    const ClrMargins mlo = check_clr(d2, lo, 0.6);
    CHECK(mlo.small_branch.has_value());
    CHECK(!mlo.big_branch.has_value());
    const OrthFamily hi = random_orthonormal(d2, 5, MetricSpec::hsa(0.9), 3);
    const ClrMargins mhi = check_clr(d2, hi, 0.9);
    CHECK(!mhi.small_branch.has_value());
    CHECK(mhi.big_branch.has_value());
    CHECK_THROWS_AS(check_clr(d2, lo, 0.9), std::invalid_argument);  // metric mismatch
}

TEST_CASE("check_minmax: closed-form single mode, eps -> infinity, proof-step bound") {
    const SpectralDomain d = SpectralDomain::torus(kPi, 1);  // lambda = 4
    const double lam = d.eigenvalues()[0];
    const double v = d.volume();
    const ConstantSet c = constant_set();
    for (double s : {0.5, 1.0})
        for (double eps : {0.0, 1.0}) {
            const MinmaxMargins got = check_minmax(d, eps, s, 1, 9, 321);
            const double l3cube = std::pow(2.0 / v, 1.5) * v * (4.0 / (3.0 * kPi));
            const double lhs = std::pow(l3cube, 2.0 / 3.0) / (eps + std::pow(lam, s));
            const double rhs = 1.5 * c.c_sob6 * std::pow(v, (2.0 / 3.0) * (s - 0.5)) *
                               std::pow(c.c_bly, 0.5 - s);
            CHECK(std::abs(got.eigenmode.margin - (rhs - lhs)) < 1e-9);
        }

    // eps -> infinity: LHS -> 0, margin -> RHS.
    const MinmaxMargins far = check_minmax(d, 1e12, 1.0, 1, 9, 321);
    CHECK(far.eigenmode.lhs < 1e-10);
    CHECK(far.eigenmode.margin == doctest::Approx(far.eigenmode.rhs).epsilon(1e-10));

    // Proof-step bound at eps = 0, s = 1 for the eigenmode family:
    // sum ||theta_k||^2_{L^3} <= C_sob3^2 sum lambda_k^{-1/2}.
    const SpectralDomain d2 = SpectralDomain::torus(2.0 * kPi, 2);
    const MinmaxMargins lam_chk = check_minmax(d2, 0.0, 1.0, 8, 9, 2 * (6 * d2.kmax() + 1) + 1);
    double bound = 0.0;
    for (int k = 0; k < 8; ++k) bound += 1.0 / std::sqrt(d2.eigenvalues()[k]);
    bound *= c.c_sob3 * c.c_sob3;
    CHECK(lam_chk.eigenmode.lhs <= bound);
}

TEST_CASE("campaigns: deterministic merge, serial/parallel identical") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    const CampaignReport a = clr_campaign(d, 24, 555, 16);
    kernels::force_serial(true);
    const CampaignReport b = clr_campaign(d, 24, 555, 16);
    kernels::force_serial(false);
    REQUIRE(a.margins.size() == b.margins.size());
    for (std::size_t i = 0; i < a.margins.size(); ++i) CHECK(a.margins[i] == b.margins[i]);

    const CampaignReport mm = minmax_campaign(d, 12, 556, 8, 13);
    CHECK(mm.margins.size() == 24);  // eigenmode + random per trial
}
