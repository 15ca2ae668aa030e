#include "nsv/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "nsv/bounds.hpp"
#include "nsv/constants.hpp"
#include "nsv/galerkin.hpp"
#include "nsv/orthonormal.hpp"
#include "nsv/rng.hpp"
#include "nsv/spectral_domain.hpp"
#include "nsv/trace.hpp"
#include "nsv/zeta.hpp"

namespace nsv::acceptance {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// Forcing / initial data supported on the lowest `support` modes, normalized
// to the requested L2 norm. Deterministic per seed.
std::vector<double> seeded_vector(int m, int support, double norm, std::uint64_t seed) {
    std::vector<double> v(m, 0.0);
    const std::vector<double> g = random_coefficients(support, seed);
    double n2 = 0.0;
    for (double x : g) n2 += x * x;
    const double scale = norm / std::sqrt(n2);
    for (int i = 0; i < support; ++i) v[i] = scale * g[i];
    return v;
}

// ---------------------------------------------------------------------------
// 1. Constants fidelity
// ---------------------------------------------------------------------------
CriterionResult criterion1(double fault) {
    CriterionResult r{1, "constants fidelity (printed values, grid max at s = 0.5)", false, "", 0};
    ConstantSet c = constant_set();
    c.c_1_clr *= 1.0 + fault;
    c.c_s_clr_uniform *= 1.0 + fault;
    const double d1 = std::abs(c.c_1_clr - 1.484251229);
    const double d2 = std::abs(c.c_s_clr_uniform - 1.906044430);

    double grid_max = -1.0;
    double argmax = -1.0;
    for (int i = 0; i <= 50; ++i) {
        const double s = 0.5 + 0.01 * i;
        const double v = c_s_clr(s, ClrMode::FrankPointwise);
        if (v > grid_max) {
            grid_max = v;
            argmax = s;
        }
    }
    const double d3 = std::abs(grid_max - c.c_s_clr_uniform);
    r.pass = d1 <= 1e-6 && d2 <= 1e-6 && argmax == 0.5 && d3 <= 1e-9;
    r.detail = fmt("|c_1_clr-1.484251229|=%.2e |uniform-1.906044430|=%.2e argmax=%.2f |max-uniform|=%.2e",
                   d1, d2, argmax, d3);
    return r;
}

// ---------------------------------------------------------------------------
// 2. Zeta lower bounds on the synthetic extremal spectrum
// ---------------------------------------------------------------------------
CriterionResult criterion2() {
    CriterionResult r{2, "zeta lower bounds on the synthetic spectrum (N <= 1e4)", false, "", 0};
    const SpectralDomain domain = SpectralDomain::synthetic(10000, 1.0);
    long long violations = 0;
    double min_gest = 1e300, min_gest1 = 1e300, min_ggest = 1e300;
    for (int si = 0; si <= 10; ++si) {
        const double s = 0.5 + 0.05 * si;
        for (int ai = 0; ai < 13; ++ai) {
            const double alpha = std::pow(10.0, -3.0 + 0.5 * ai);
            const auto sweep = zeta_margin_sweep(domain, alpha, s, 10000);
            for (const auto& m : sweep) {
                if (m.gest_margin < 0.0 || m.gest1_margin < 0.0) ++violations;
                if (m.ggest_margin && *m.ggest_margin < 0.0) ++violations;
                min_gest = std::min(min_gest, m.gest_margin);
                min_gest1 = std::min(min_gest1, m.gest1_margin);
                if (m.ggest_margin) min_ggest = std::min(min_ggest, *m.ggest_margin);
            }
        }
    }
    r.pass = violations == 0;
    r.detail = fmt("violations=%lld min margins: gest=%.3e gest1=%.3e ggest=%.3e", violations,
                   min_gest, min_gest1, min_ggest);
    return r;
}

// ---------------------------------------------------------------------------
// 3. Energy identity: observed convergence order 2 under dt-halving
// ---------------------------------------------------------------------------
CriterionResult criterion3() {
    CriterionResult r{3, "energy identity residual converges at order 2", false, "", 0};
    // The 12 lowest modes (the lambda = 1 shell) carry the forcing and the
    // initial data; on the kmax = 2 basis their interactions populate the
    // higher shells, so the run is genuinely nonlinear. alpha != 1 keeps the
    // scaled-time form of the identity honest.
    const SpectralDomain domain = SpectralDomain::torus(2.0 * kPi, 2);
    const int m = domain.mode_count();
    const PhysicalParams params =
        PhysicalParams::make(1.0, 1.3, 0.8, seeded_vector(m, 12, 0.2, 301));
    GalerkinState u0;
    u0.coeffs = seeded_vector(m, 12, 0.3, 302);

    const double t_final = 2.0;
    std::vector<double> max_res;
    for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) {
        const TrajectoryRecord traj = simulate(u0, params, domain, t_final, dt, 1);
        max_res.push_back(energy_residual(traj, params).max_abs);
    }
    bool ok = true;
    std::ostringstream orders;
    for (std::size_t i = 0; i + 1 < max_res.size(); ++i) {
        const double order = std::log2(max_res[i] / max_res[i + 1]);
        orders << fmt("%s%.3f", i ? "," : "", order);
        if (!(order >= 1.8 && order <= 2.2)) ok = false;
    }
    r.pass = ok;
    r.detail = fmt("max|res|=%.2e..%.2e observed orders=[%s]", max_res.front(), max_res.back(),
                   orders.str().c_str());
    return r;
}

// ---------------------------------------------------------------------------
// 4. Exact linear decay of a single mode
// ---------------------------------------------------------------------------
CriterionResult criterion4() {
    CriterionResult r{4, "single-mode linear decay matches exp(-nu lambda t/(eps+lambda^s))",
                      false, "", 0};
    const SpectralDomain domain = SpectralDomain::torus(2.0 * kPi, 2);
    const int m = domain.mode_count();
    double worst = 0.0;
    for (double s : {0.5, 1.0})
        for (double lambda : {1.0, 4.0})
            for (double eps : {0.5, 2.0}) {
                const double alpha = std::pow(eps, -1.0 / s);
                const PhysicalParams params =
                    PhysicalParams::make(1.0, alpha, s, std::vector<double>(m, 0.0));
                int mode = -1;
                for (int k = 0; k < m; ++k)
                    if (std::abs(domain.eigenvalues()[k] - lambda) < 1e-12) {
                        mode = k;
                        break;
                    }
                GalerkinState u0;
                u0.coeffs.assign(m, 0.0);
                u0.coeffs[mode] = 1.0;
                const TrajectoryRecord traj = simulate(u0, params, domain, 1.0, 1e-3, 1000);
                const double exact =
                    std::exp(-params.nu * lambda / (params.epsilon + std::pow(lambda, s)));
                const double rel = std::abs(traj.samples.back().coeffs[mode] - exact) / exact;
                worst = std::max(worst, rel);
            }
    r.pass = worst <= 1e-6;
    r.detail = fmt("worst relative error %.3e over (s,lambda,eps) grid (tol 1e-6)", worst);
    return r;
}

// ---------------------------------------------------------------------------
// 5. Mean enstrophy bound and its equality case
// ---------------------------------------------------------------------------
CriterionResult criterion5() {
    CriterionResult r{5, "mean enstrophy ratio <= 1+1e-3; first-eigenmode equality case", false,
                      "", 0};
    const SpectralDomain domain = SpectralDomain::torus(2.0 * kPi, 2);
    const int m = domain.mode_count();
    GalerkinState rest;
    rest.coeffs.assign(m, 0.0);

    // Equality case: forcing on the first eigenmode only; the trajectory stays
    // on that mode, so the steady state realizes ||grad u*||^2 = ||h||^2/(nu^2 lambda_1).
    std::vector<double> h1(m, 0.0);
    h1[0] = 0.05;
    const PhysicalParams p1 = PhysicalParams::make(1.0, 1.0, 1.0, h1);
    const TrajectoryRecord traj1 = simulate(rest, p1, domain, 80.0, 5e-3, 10);
    const double eq_ratio = mean_enstrophy_check(traj1, p1, domain, 0.5).ratio;

    double worst = 0.0;
    for (int seed = 0; seed < 10; ++seed) {
        const PhysicalParams p = PhysicalParams::make(
            1.0, 1.0, 1.0, seeded_vector(m, m, 0.3, mix_seed(505, seed)));
        const TrajectoryRecord traj = simulate(rest, p, domain, 80.0, 5e-3, 10);
        worst = std::max(worst, mean_enstrophy_check(traj, p, domain, 0.5).ratio);
    }
    r.pass = std::abs(eq_ratio - 1.0) <= 1e-3 && worst <= 1.0 + 1e-3;
    r.detail = fmt("equality case ratio=%.6f; max ratio over 10 seeds=%.6f", eq_ratio, worst);
    return r;
}

// ---------------------------------------------------------------------------
// 6. Trace / zeta-hat cross identity at u = 0
// ---------------------------------------------------------------------------
CriterionResult criterion6() {
    CriterionResult r{6, "Tr_N at u = 0 equals -nu zeta_hat(alpha,s,N) to rel 1e-10", false, "",
                      0};
    const SpectralDomain domain = SpectralDomain::torus(2.0 * kPi, 2);
    const int m = domain.mode_count();
    double worst = 0.0;
    for (double s : {0.5, 0.75, 1.0}) {
        const PhysicalParams params =
            PhysicalParams::make(0.7, 0.9, s, std::vector<double>(m, 0.0));
        const std::vector<double> zero(m, 0.0);
        const std::vector<double> sums = trace_partial_sums(domain, params, zero);
        for (int n = 1; n <= m; ++n) {
            const double zh = zeta_hat(domain, {params.alpha, s, n});
            const double rel = std::abs(sums[n - 1] + params.nu * zh) / (params.nu * zh);
            worst = std::max(worst, rel);
        }
    }
    r.pass = worst <= 1e-10;
    r.detail = fmt("worst relative mismatch %.3e over s in {0.5,0.75,1}, N <= %d", worst, m);
    return r;
}

// ---------------------------------------------------------------------------
// 7. Jacobian columns vs centered finite differences
// ---------------------------------------------------------------------------
CriterionResult criterion7() {
    CriterionResult r{7, "convection Jacobian matches centered finite differences", false, "", 0};
    const SpectralDomain domain = SpectralDomain::torus(2.0 * kPi, 2);
    const int m = domain.mode_count();
    const double h = 1e-5;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> u = random_coefficients(m, mix_seed(707, trial));
        double n2 = 0.0;
        for (double x : u) n2 += x * x;
        for (double& x : u) x *= 0.7 / std::sqrt(n2);
        for (int j = 0; j < m; ++j) {
            std::vector<double> dir(m, 0.0);
            dir[j] = 1.0;
            const std::vector<double> col = convection_jacobian_apply(domain, u, dir);
            std::vector<double> up = u, dn = u;
            up[j] += h;
            dn[j] -= h;
            const std::vector<double> np = nonlinear_term(domain, up);
            const std::vector<double> nn = nonlinear_term(domain, dn);
            double diff2 = 0.0, ref2 = 0.0;
            for (int i = 0; i < m; ++i) {
                const double fd = (np[i] - nn[i]) / (2.0 * h);
                diff2 += (fd - col[i]) * (fd - col[i]);
                ref2 += fd * fd;
            }
            worst = std::max(worst, std::sqrt(diff2) / std::max(std::sqrt(ref2), 1e-12));
        }
    }
    r.pass = worst <= 1e-6;
    r.detail = fmt("worst column-relative error %.3e over 20 states (tol 1e-6)", worst);
    return r;
}

// ---------------------------------------------------------------------------
// 8. Orthonormal-family campaigns
// ---------------------------------------------------------------------------
CriterionResult criterion8() {
    CriterionResult r{8, "orthonormal-family campaigns (LT hard, closed forms hard)", false, "",
                      0};
    const SpectralDomain domain = SpectralDomain::torus(2.0 * kPi, 2);

    const CampaignReport lt = lt_campaign(domain, 200, 808, 32);
    const CampaignReport clr = clr_campaign(domain, 200, 809, 32);
    const CampaignReport minmax = minmax_campaign(domain, 60, 810, 16, 13);

    // Closed-form single-mode anchors on the pi-torus (lambda_1 = 4 so the
    // fractional weights are not trivially 1).
    const SpectralDomain small = SpectralDomain::torus(kPi, 1);
    const double v = small.volume();
    const double lam = small.eigenvalues()[0];
    const ConstantSet c = constant_set();
    double worst_closed = 0.0;

    for (double s : {0.75, 1.0}) {
        OrthFamily fam;
        fam.metric = MetricSpec::hsa(s);
        fam.vectors.assign(1, std::vector<double>(small.mode_count(), 0.0));
        fam.vectors[0][0] = std::pow(lam, -s / 2.0);
        const ClrMargins got = check_clr(small, fam, s);
        const double rho_l2 = std::pow(lam, -s) * std::sqrt(1.5 / v);
        const double expected_big = c_s_clr(s, ClrMode::Uniform) *
                                        std::pow(v, 2.0 * s / 3.0 - 0.5) -
                                    rho_l2;
        worst_closed = std::max(worst_closed, std::abs(*got.big_branch - expected_big));
        if (s == 0.75) {
            const double expected_small = c_s_clr(s, ClrMode::Uniform) - rho_l2;
            worst_closed = std::max(worst_closed, std::abs(*got.small_branch - expected_small));
        }
    }

    // Min-max closed form: theta = (eps+A^s)^{-1/2} e_1 is a single harmonic,
    // so ||theta||^3_{L^3} = (eps+lam^s)^{-3/2} (2/V)^{3/2} V (4/(3 pi)).
    // Grid 641 (odd) holds the |cos|^3 aliasing error near 3e-12.
    for (double s : {0.5, 1.0})
        for (double eps : {0.0, 1.0}) {
            const MinmaxMargins got = check_minmax(small, eps, s, 1, 42, 641);
            const double l3cube = std::pow(2.0 / v, 1.5) * v * (4.0 / (3.0 * kPi));
            const double lhs = std::pow(l3cube, 2.0 / 3.0) / (eps + std::pow(lam, s));
            const double rhs = 1.5 * c.c_sob6 * std::pow(v, (2.0 / 3.0) * (s - 0.5)) *
                               std::pow(c.c_bly, 0.5 - s);
            worst_closed = std::max(worst_closed, std::abs(got.eigenmode.margin - (rhs - lhs)));
        }

    const bool lt_ok = lt.violations.empty();
    r.pass = lt_ok && worst_closed <= 1e-10;
    r.detail = fmt(
        "lt: min margin %.4f, %zu violations (hard); clr: min %.4f, %zu neg (finding); "
        "minmax: min %.4f, %zu neg (finding); closed-form worst |diff|=%.2e (hard)",
        lt.min_margin, lt.violations.size(), clr.min_margin, clr.violations.size(),
        minmax.min_margin, minmax.violations.size(), worst_closed);
    return r;
}

// ---------------------------------------------------------------------------
// 9. Theory vs experiment: N* <= ceil(best bound), split halves agree
// ---------------------------------------------------------------------------
CriterionResult criterion9() {
    CriterionResult r{9, "empirical N* <= ceil(best bound), split halves within 10%", false, "",
                      0};
    const SpectralDomain domain = SpectralDomain::torus(2.0 * kPi, 2);
    const int m = domain.mode_count();
    bool ok = true;
    std::ostringstream detail;
    const double s_values[3] = {1.0, 0.75, 0.5};
    for (int run = 0; run < 3; ++run) {
        const double s = s_values[run];
        const PhysicalParams params = PhysicalParams::make(
            1.0, 1.0, s, seeded_vector(m, m, 0.5, mix_seed(911, run)));
        GalerkinState rest;
        rest.coeffs.assign(m, 0.0);
        const TrajectoryRecord traj = simulate(rest, params, domain, 120.0, 5e-3, 10);
        const TraceReport report = q_curve(traj, domain, params, 16, 0.5);
        const DimensionlessPair pair = grashof_numbers(params, domain);
        const double bound = best_bound(s, pair).value;
        const long long ceiling = static_cast<long long>(std::ceil(bound));
        const bool run_ok = report.n_star.has_value() &&
                            *report.n_star <= ceiling &&
                            report.split_disagreement <= 0.10;
        if (!run_ok) ok = false;
        detail << fmt("%s[s=%.2f N*=%d ceil=%lld split=%.3f]", run ? " " : "", s,
                      report.n_star.value_or(-1), ceiling, report.split_disagreement);
    }
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// ---------------------------------------------------------------------------
// 10. Gating and homogeneity identities
// ---------------------------------------------------------------------------
CriterionResult criterion10() {
    CriterionResult r{10, "est3 gate (boundary accepted) and homogeneity to rel 1e-12", false,
                      "", 0};
    SplitMix64 rng(1010);
    double worst = 0.0;
    bool gate_ok = true;
    const ConstantSet c = constant_set();
    const double gate_rhs = std::pow(0.45, 2.0) * std::pow(c.c_bly, -1.0 / 3.0) / c.c_lt *
                            std::pow(c.c_sob6, -2.0) * std::pow(c.c_1_clr, -4.0 / 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double g = std::pow(10.0, -1.0 + 3.0 * rng.next_unit());
        const double g1 = std::pow(10.0, -3.0 + 5.0 * rng.next_unit());
        const double kappa = std::pow(10.0, -1.0 + 2.0 * rng.next_unit());
        const DimensionlessPair base{g, g1};
        const DimensionlessPair scaled{kappa * g, g1};

        const double s_lo = 0.5 + 0.25 * rng.next_unit();   // est_mid branch
        const double s_hi = 0.75 + 0.25 * rng.next_unit();  // est2 branch

        const auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
        worst = std::max(worst, rel(bound_minmax_only(s_lo, scaled).value,
                                    std::pow(kappa, 6.0) * bound_minmax_only(s_lo, base).value));
        worst = std::max(worst, rel(bound_clr(s_hi, scaled).value,
                                    std::pow(kappa, 1.5) * bound_clr(s_hi, base).value));
        worst = std::max(worst,
                         rel(bound_clr(s_lo, scaled).value,
                             std::pow(kappa, 6.0 * (1.0 - s_lo)) * bound_clr(s_lo, base).value));
        worst = std::max(worst, rel(bound_small_alpha(scaled).value,
                                    std::pow(kappa, 18.0 / 13.0) * bound_small_alpha(base).value));
        const DimensionlessPair half_g1{g, 0.5 * g1};
        worst = std::max(worst, rel(bound_small_alpha(half_g1).value,
                                    std::pow(2.0, 6.0 / 13.0) * bound_small_alpha(base).value));

        // Gate: just above the boundary must be refused, just below accepted.
        const double g1_boundary = std::pow(gate_rhs / std::pow(g, 4.0), 1.0 / 3.0);
        if (bound_small_alpha({g, g1_boundary * (1.0 + 1e-9)}).applicable) gate_ok = false;
        if (!bound_small_alpha({g, g1_boundary * (1.0 - 1e-9)}).applicable) gate_ok = false;
    }
    r.pass = worst <= 1e-12 && gate_ok;
    r.detail = fmt("worst homogeneity deviation %.3e (tol 1e-12); gate boundary behavior %s",
                   worst, gate_ok ? "correct" : "WRONG");
    return r;
}

}  // namespace

SuiteResult run_suite(const Options& options) {
    SuiteResult suite;
    int next_id = 0;
    const auto run = [&](auto&& fn, auto&&... args) {
        ++next_id;
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), next_id) == options.only.end())
            return;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult res = fn(args...);
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (options.log)
            *options.log << (res.pass ? "PASS" : "FAIL") << " criterion " << res.id << ": "
                         << res.name << " — " << res.detail << " (" << fmt("%.2f", res.seconds)
                         << " s)\n";
        suite.criteria.push_back(std::move(res));
    };
    run(criterion1, options.constant_fault);
    run(criterion2);
    run(criterion3);
    run(criterion4);
    run(criterion5);
    run(criterion6);
    run(criterion7);
    run(criterion8);
    run(criterion9);
    run(criterion10);
    return suite;
}

}  // namespace nsv::acceptance
