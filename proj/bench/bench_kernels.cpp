// Timing comparison of the parallel production kernels against their serial
// references, with consistency checks: serial vs parallel must agree bitwise
// (gather-form outputs, plane-ordered reductions), mode-space convolution vs
// the real-space quadrature reference to 1e-12. Exits nonzero on mismatch, so
// the --quick mode doubles as a consistency smoke test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <omp.h>

#include "nsv/galerkin.hpp"
#include "nsv/kernels.hpp"
#include "nsv/orthonormal.hpp"
#include "nsv/rng.hpp"
#include "nsv/trace.hpp"

using namespace nsv;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

template <typename Fn>
double best_seconds(Fn&& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count());
    }
    return best;
}

int failures = 0;

void report(const char* name, double serial_s, double parallel_s, bool consistent) {
    std::printf("%-34s serial %9.4f ms   parallel %9.4f ms   speedup %5.2fx   %s\n", name,
                serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
                consistent ? "consistent" : "MISMATCH");
    if (!consistent) ++failures;
}

std::vector<double> state(const SpectralDomain& d, std::uint64_t seed) {
    std::vector<double> u = random_coefficients(d.mode_count(), seed);
    double n2 = 0.0;
    for (double x : u) n2 += x * x;
    for (double& x : u) x *= 1.0 / std::sqrt(n2);
    return u;
}

void bench_convolution(int kmax, int reps) {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, kmax);
    const std::vector<double> u = state(d, 42);

    kernels::force_serial(true);
    const std::vector<double> serial_out = nonlinear_term(d, u);
    const double serial_s = best_seconds([&] { nonlinear_term(d, u); }, reps);
    kernels::force_serial(false);
    const std::vector<double> parallel_out = nonlinear_term(d, u);
    const double parallel_s = best_seconds([&] { nonlinear_term(d, u); }, reps);

    const bool bitwise = std::memcmp(serial_out.data(), parallel_out.data(),
                                     serial_out.size() * sizeof(double)) == 0;
    char name[64];
    std::snprintf(name, sizeof(name), "convolution kmax=%d (M=%d)", kmax, d.mode_count());
    report(name, serial_s, parallel_s, bitwise);

    // Independent reference: real-space quadrature projection.
    const std::vector<double> ref = nonlinear_term_reference(d, u);
    const double ref_s = best_seconds([&] { nonlinear_term_reference(d, u); },
                                      std::max(1, reps / 4));
    double max_diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        max_diff = std::max(max_diff, std::abs(ref[i] - parallel_out[i]));
        scale = std::max(scale, std::abs(ref[i]));
    }
    const bool close = max_diff <= 1e-12 * std::max(scale, 1.0);
    std::snprintf(name, sizeof(name), "  vs real-space reference");
    report(name, ref_s, parallel_s, close);
}

void bench_rho(int kmax, int grid, int n_family, int reps) {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, kmax);
    const OrthFamily fam = random_orthonormal(d, n_family, MetricSpec::l2(), 7);

    kernels::force_serial(true);
    const RhoNorms serial_out = rho_norms(d, fam, grid);
    const double serial_s = best_seconds([&] { rho_norms(d, fam, grid); }, reps);
    kernels::force_serial(false);
    const RhoNorms parallel_out = rho_norms(d, fam, grid);
    const double parallel_s = best_seconds([&] { rho_norms(d, fam, grid); }, reps);

    const bool same = serial_out.l2 == parallel_out.l2 && serial_out.l3 == parallel_out.l3 &&
                      serial_out.integral == parallel_out.integral &&
                      serial_out.theta_l3_sq == parallel_out.theta_l3_sq;
    char name[64];
    std::snprintf(name, sizeof(name), "rho quadrature n=%d N=%d", grid, n_family);
    report(name, serial_s, parallel_s, same);
}

void bench_qcurve(int n_samples, int reps) {
    const SpectralDomain d = SpectralDomain::torus(2.0 * kPi, 2);
    const PhysicalParams p =
        PhysicalParams::make(1.0, 1.0, 1.0, std::vector<double>(d.mode_count(), 0.0));
    GalerkinState u0;
    u0.coeffs = state(d, 5);
    const TrajectoryRecord traj =
        simulate(u0, p, d, 0.01 * n_samples, 0.01, 1);

    kernels::force_serial(true);
    const TraceReport serial_out = q_curve(traj, d, p, 16, 0.0);
    const double serial_s = best_seconds([&] { q_curve(traj, d, p, 16, 0.0); }, reps);
    kernels::force_serial(false);
    const TraceReport parallel_out = q_curve(traj, d, p, 16, 0.0);
    const double parallel_s = best_seconds([&] { q_curve(traj, d, p, 16, 0.0); }, reps);

    const bool same = serial_out.q_values == parallel_out.q_values;
    char name[64];
    std::snprintf(name, sizeof(name), "q curve, %d samples (M=64)", n_samples + 1);
    report(name, serial_s, parallel_s, same);
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--quick") quick = true;

    std::printf("threads: %d\n", omp_get_max_threads());
    if (quick) {
        bench_convolution(2, 3);
        bench_rho(2, 17, 8, 3);
        bench_qcurve(16, 2);
    } else {
        for (int kmax : {2, 3, 4}) bench_convolution(kmax, 20);
        bench_rho(2, 33, 16, 10);
        bench_rho(3, 49, 16, 5);
        bench_qcurve(256, 3);
    }
    kernels::force_serial(false);
    if (failures) std::printf("%d consistency FAILURES\n", failures);
    return failures == 0 ? 0 : 1;
}
