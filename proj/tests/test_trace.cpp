#include <doctest.h>

#include <cmath>
#include <cstring>

#include <Eigen/Dense>

#include "nsv/galerkin.hpp"
#include "nsv/kernels.hpp"
#include "nsv/orthonormal.hpp"
#include "nsv/rng.hpp"
#include "nsv/trace.hpp"
#include "nsv/zeta.hpp"

using namespace nsv;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// Exact grid-quadrature trilinear form b(a,b,c) = int ((a.grad)b).c dx.
// The integrand is a trigonometric polynomial of per-component degree 3 kmax,
// so the uniform grid with 3 kmax + 1 points per dimension is exact. This is
// the independent route against the mode-space convolution.
double b_grid(const SpectralDomain& d, const std::vector<double>& a,
              const std::vector<double>& b, const std::vector<double>& c) {
    const int n = 3 * d.kmax() + 1;
    const kernels::GridEvaluator grid(d, n);
    std::vector<double> fa(std::size_t(3) * n * n), fb(fa.size()), fc(fa.size());
    std::vector<double> gb(std::size_t(9) * n * n);
    long double total = 0.0L;
    for (int jz = 0; jz < n; ++jz) {
        grid.eval_plane(a, jz, fa);
        grid.eval_plane(c, jz, fc);
        grid.eval_plane_with_gradient(b, jz, fb, gb);
        for (int p = 0; p < n * n; ++p)
            for (int comp = 0; comp < 3; ++comp) {
                const double conv = fa[3 * p + 0] * gb[9 * p + 3 * comp + 0] +
                                    fa[3 * p + 1] * gb[9 * p + 3 * comp + 1] +
                                    fa[3 * p + 2] * gb[9 * p + 3 * comp + 2];
                total += conv * fc[3 * p + comp];
            }
    }
    return double(total) * grid.cell_volume();
}

std::vector<double> normalized_state(const SpectralDomain& d, double norm, std::uint64_t seed) {
    std::vector<double> u = random_coefficients(d.mode_count(), seed);
    double n2 = 0.0;
    for (double x : u) n2 += x * x;
    for (double& x : u) x *= norm / std::sqrt(n2);
    return u;
}
}  // namespace

TEST_CASE("linearized matrix at u = 0 is the exact diagonal") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    const PhysicalParams p =
        PhysicalParams::make(0.8, 1.4, 0.75, std::vector<double>(d.mode_count(), 0.0));
    const std::vector<double> zero(d.mode_count(), 0.0);
    const Eigen::MatrixXd mat = linearized_matrix(d, p, zero);
    for (int i = 0; i < d.mode_count(); ++i)
        for (int j = 0; j < d.mode_count(); ++j) {
            if (i == j) {
                const double lam = d.eigenvalues()[i];
                const double expected = -p.nu * lam / (p.epsilon + std::pow(lam, p.s));
                CHECK(mat(i, i) == doctest::Approx(expected).epsilon(1e-14));
            } else {
                CHECK(mat(i, j) == 0.0);
            }
        }
}

TEST_CASE("Tr_N at u = 0 equals -nu zeta_hat (cross-module identity)") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    for (double s : {0.5, 0.75, 1.0}) {
        const PhysicalParams p =
            PhysicalParams::make(0.7, 0.9, s, std::vector<double>(d.mode_count(), 0.0));
        const std::vector<double> zero(d.mode_count(), 0.0);
        const std::vector<double> sums = trace_partial_sums(d, p, zero);
        for (int n = 1; n <= d.mode_count(); ++n) {
            const double zh = zeta_hat(d, {p.alpha, s, n});
            CHECK(std::abs(sums[n - 1] + p.nu * zh) <= 1e-10 * p.nu * zh);
        }
    }
}

TEST_CASE("quadratic form: theta' K theta = -nu ||grad theta||^2 - ((theta.grad)u, theta)") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    const PhysicalParams p =
        PhysicalParams::make(1.0, 0.7, 0.9, std::vector<double>(d.mode_count(), 0.0));
    const std::vector<double> u = normalized_state(d, 0.8, 2024);
    const Eigen::MatrixXd mat = linearized_matrix(d, p, u);
    const std::vector<double> w = mass_weights(p, d);
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<double> theta = normalized_state(d, 1.0, mix_seed(4000, trial));
        // The matrix lives in the metric-orthonormal frame: theta's frame
        // coordinates are D^{1/2} theta.
        Eigen::VectorXd tv(d.mode_count());
        for (int i = 0; i < d.mode_count(); ++i) tv(i) = std::sqrt(w[i]) * theta[i];
        const double quad = tv.dot(mat * tv);

        double enstrophy = 0.0;
        for (int i = 0; i < d.mode_count(); ++i)
            enstrophy += d.eigenvalues()[i] * theta[i] * theta[i];
        const double expected = -p.nu * enstrophy - b_grid(d, theta, u, theta);
        CHECK(quad == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("Jacobian columns match centered finite differences") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    const double h = 1e-5;
    for (int trial = 0; trial < 3; ++trial) {
        const std::vector<double> u = normalized_state(d, 0.7, mix_seed(4100, trial));
        for (int j = 0; j < d.mode_count(); j += 7) {
            std::vector<double> dir(d.mode_count(), 0.0);
            dir[j] = 1.0;
            const std::vector<double> col = convection_jacobian_apply(d, u, dir);
            std::vector<double> up = u, dn = u;
            up[j] += h;
            dn[j] -= h;
            const std::vector<double> np = nonlinear_term(d, up);
            const std::vector<double> nn = nonlinear_term(d, dn);
            double diff = 0.0, ref = 0.0;
            for (int i = 0; i < d.mode_count(); ++i) {
                const double fd = (np[i] - nn[i]) / (2.0 * h);
                diff += (fd - col[i]) * (fd - col[i]);
                ref += fd * fd;
            }
            CHECK(std::sqrt(diff) <= 1e-6 * std::max(std::sqrt(ref), 1e-12));
        }
    }
}

TEST_CASE("Ky Fan: random orthonormal frames never beat Tr_N; eigenframe attains it") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 1);
    const PhysicalParams p =
        PhysicalParams::make(1.0, 1.1, 1.0, std::vector<double>(d.mode_count(), 0.0));
    const std::vector<double> u = normalized_state(d, 0.6, 888);
    const std::vector<double> w = mass_weights(p, d);
    const int m = d.mode_count();
    const int n = 4;
    const double tr_n = trace_n(d, p, u, n);

    // Independent route to the quadratic form: K theta via the FD Jacobian of
    // the nonlinearity plus the diagonal -nu Lambda.
    const auto k_apply = [&](const std::vector<double>& theta) {
        const double h = 1e-6;
        std::vector<double> up = u, dn = u;
        for (int i = 0; i < m; ++i) {
            up[i] += h * theta[i];
            dn[i] -= h * theta[i];
        }
        const std::vector<double> np = nonlinear_term(d, up);
        const std::vector<double> nn = nonlinear_term(d, dn);
        std::vector<double> out(m);
        for (int i = 0; i < m; ++i)
            out[i] = -(np[i] - nn[i]) / (2.0 * h) - p.nu * d.eigenvalues()[i] * theta[i];
        return out;
    };

    double best_random = -1e300;
    for (int trial = 0; trial < 10000; ++trial) {
        const OrthFamily frame = random_orthonormal(
            d, n, MetricSpec::vs_alpha(p.epsilon, p.s), mix_seed(5200, trial));
        double sum = 0.0;
        for (const auto& theta : frame.vectors) {
            const std::vector<double> kt = k_apply(theta);
            for (int i = 0; i < m; ++i) sum += kt[i] * theta[i];
        }
        CHECK(sum <= tr_n + 1e-9 * std::abs(tr_n) + 1e-8);
        best_random = std::max(best_random, sum);
    }
    // A frame of top eigenvectors of the symmetric part attains the trace.
    const Eigen::MatrixXd mat = linearized_matrix(d, p, u);
    const Eigen::MatrixXd sym = 0.5 * (mat + mat.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    double attained = 0.0;
    for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd v = solver.eigenvectors().col(m - 1 - k);
        std::vector<double> theta(m);
        for (int i = 0; i < m; ++i) theta[i] = v(i) / std::sqrt(w[i]);
        const std::vector<double> kt = k_apply(theta);
        for (int i = 0; i < m; ++i) attained += kt[i] * theta[i];
    }
    CHECK(attained == doctest::Approx(tr_n).epsilon(1e-6));  // FD-limited accuracy
    CHECK(best_random <= attained + 1e-6);
}

TEST_CASE("full trace is basis-independent; increments nonincreasing") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    const PhysicalParams p =
        PhysicalParams::make(0.9, 1.3, 0.8, std::vector<double>(d.mode_count(), 0.0));
    const std::vector<double> u = normalized_state(d, 0.9, 4500);
    const int m = d.mode_count();
    const std::vector<double> sums = trace_partial_sums(d, p, u);

    // Raw-basis trace of L = D^{-1} K: sum_k K_kk / w_k.
    const std::vector<double> w = mass_weights(p, d);
    double raw_trace = 0.0;
    for (int j = 0; j < m; ++j) {
        std::vector<double> dir(m, 0.0);
        dir[j] = 1.0;
        const std::vector<double> col = convection_jacobian_apply(d, u, dir);
        raw_trace += (-col[j] - p.nu * d.eigenvalues()[j]) / w[j];
    }
    CHECK(sums[m - 1] == doctest::Approx(raw_trace).epsilon(1e-10));

    for (int n = 1; n + 1 < m; ++n) {
        const double inc1 = sums[n] - sums[n - 1];
        const double inc2 = sums[n + 1] - sums[n];
        CHECK(inc2 <= inc1 + 1e-12);
    }
}

TEST_CASE("q_curve on a free-decay trajectory approaches -nu zeta_hat") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 1);
    const PhysicalParams p =
        PhysicalParams::make(1.0, 1.0, 1.0, std::vector<double>(d.mode_count(), 0.0));
    GalerkinState u0;
    u0.coeffs = normalized_state(d, 1e-3, 4900);
    const TrajectoryRecord traj = simulate(u0, p, d, 40.0, 0.01, 100);
    const TraceReport report = q_curve(traj, d, p, d.mode_count(), 0.5);
    for (int n = 1; n <= d.mode_count(); ++n) {
        const double expected = -p.nu * zeta_hat(d, {p.alpha, p.s, n});
        CHECK(report.q_values[n - 1] == doctest::Approx(expected).epsilon(1e-6));
        CHECK(report.q_values[n - 1] < 0.0);
    }
    CHECK(report.n_star.has_value());
    CHECK(*report.n_star == 1);
    CHECK(!report.low_confidence);
}

TEST_CASE("q_curve near a forced steady state matches the steady trace") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    std::vector<double> h(d.mode_count(), 0.0);
    h[0] = 0.02;
    const PhysicalParams p = PhysicalParams::make(1.0, 1.0, 1.0, h);
    GalerkinState u0;
    u0.coeffs.assign(d.mode_count(), 0.0);
    const TrajectoryRecord traj = simulate(u0, p, d, 60.0, 0.01, 50);
    const TraceReport report = q_curve(traj, d, p, 8, 0.5);

    std::vector<double> steady(d.mode_count(), 0.0);
    steady[0] = h[0] / (p.nu * d.eigenvalues()[0]);
    const std::vector<double> steady_sums = trace_partial_sums(d, p, steady);
    double sup_q = 0.0;
    for (int n = 1; n <= 8; ++n) sup_q = std::max(sup_q, std::abs(steady_sums[n - 1]));
    for (int n = 1; n <= 8; ++n)
        CHECK(std::abs(report.q_values[n - 1] - steady_sums[n - 1]) <= 0.05 * sup_q);
}

TEST_CASE("empirical_dimension corner cases") {
    TraceReport r;
    r.n_values = {1, 2, 3};
    r.q_values = {-1.0, -2.0, -3.0};
    CHECK(*empirical_dimension(r) == 1);
    r.q_values = {1.0, 0.5, 0.1};
    CHECK(!empirical_dimension(r).has_value());
    r.q_values = {1.0, -0.5, -1.0};
    CHECK(*empirical_dimension(r) == 2);
}

TEST_CASE("non-scaled metric: s = 1 only; u = 0 diagonal check") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    TraceOptions opts;
    opts.unscaled_metric = true;

    const PhysicalParams bad =
        PhysicalParams::make(1.0, 1.0, 0.75, std::vector<double>(d.mode_count(), 0.0));
    const std::vector<double> zero(d.mode_count(), 0.0);
    CHECK_THROWS_AS(linearized_matrix(d, bad, zero, opts), std::invalid_argument);

    const PhysicalParams p =
        PhysicalParams::make(0.6, 1.7, 1.0, std::vector<double>(d.mode_count(), 0.0));
    const std::vector<double> sums = trace_partial_sums(d, p, zero, opts);
    // Eigenvalues -nu lambda/(1 + alpha lambda) are decreasing in lambda, so
    // the top-N sum runs over the N smallest eigenvalues.
    double acc = 0.0;
    for (int n = 1; n <= d.mode_count(); ++n) {
        const double lam = d.eigenvalues()[n - 1];
        acc += -p.nu * lam / (1.0 + p.alpha * lam);
        CHECK(sums[n - 1] == doctest::Approx(acc).epsilon(1e-12));
    }
}

TEST_CASE("q_curve parallel and serial sampling agree bitwise") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 1);
    const PhysicalParams p =
        PhysicalParams::make(1.0, 1.0, 1.0, std::vector<double>(d.mode_count(), 0.0));
    GalerkinState u0;
    u0.coeffs = normalized_state(d, 0.1, 5100);
    const TrajectoryRecord traj = simulate(u0, p, d, 4.0, 0.01, 20);
    kernels::force_serial(true);
    const TraceReport a = q_curve(traj, d, p, 8, 0.25);
    kernels::force_serial(false);
    const TraceReport b = q_curve(traj, d, p, 8, 0.25);
    CHECK(std::memcmp(a.q_values.data(), b.q_values.data(), 8 * sizeof(double)) == 0);
}

TEST_CASE("validation") {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 1);
    const PhysicalParams p =
        PhysicalParams::make(1.0, 1.0, 1.0, std::vector<double>(d.mode_count(), 0.0));
    const std::vector<double> zero(d.mode_count(), 0.0);
    CHECK_THROWS_AS(trace_n(d, p, zero, 0), std::invalid_argument);
    CHECK_THROWS_AS(trace_n(d, p, zero, d.mode_count() + 1), std::invalid_argument);
    const SpectralDomain synth = SpectralDomain::synthetic(8, 1.0);
    const PhysicalParams ps = PhysicalParams::make(1.0, 1.0, 1.0, std::vector<double>(8, 0.0));
    CHECK_THROWS_AS(linearized_matrix(synth, ps, std::vector<double>(8, 0.0)),
                    unsupported_operation);
}
