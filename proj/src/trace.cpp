#include "nsv/trace.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <omp.h>

#include "nsv/kernels.hpp"

namespace nsv {

namespace {

std::vector<double> metric_weights(const SpectralDomain& domain, const PhysicalParams& params,
                                   const TraceOptions& opts) {
    if (opts.unscaled_metric && params.s != 1.0)
        throw std::invalid_argument("trace: the non-scaled metric is defined for s = 1 only");
    std::vector<double> w(domain.mode_count());
    for (int k = 0; k < domain.mode_count(); ++k) {
        const double lam = domain.eigenvalues()[k];
        w[k] = opts.unscaled_metric ? 1.0 + params.alpha * lam
                                    : params.epsilon + std::pow(lam, params.s);
    }
    return w;
}

}  // namespace

Eigen::MatrixXd linearized_matrix(const SpectralDomain& domain, const PhysicalParams& params,
                                  std::span<const double> coeffs, const TraceOptions& opts) {
    if (!domain.is_torus()) throw unsupported_operation("linearized_matrix: synthetic domain");
    if (static_cast<int>(coeffs.size()) != domain.mode_count())
        throw std::invalid_argument("linearized_matrix: coefficient length mismatch");
    const int m = domain.mode_count();
    const std::vector<double> w = metric_weights(domain, params, opts);

    Eigen::MatrixXd mat(m, m);
    const std::vector<double> u(coeffs.begin(), coeffs.end());
    const bool parallel = !kernels::serial_forced() && m >= 48;
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < m; ++j) {
        std::vector<double> dir(m, 0.0);
        dir[j] = 1.0;
        const std::vector<double> col = convection_jacobian_apply(domain, u, dir);
        for (int i = 0; i < m; ++i) mat(i, j) = -col[i];
    }
    for (int i = 0; i < m; ++i) mat(i, i) -= params.nu * domain.eigenvalues()[i];
    // Conjugate by D^{1/2}: entry (i,j) becomes K_ij / sqrt(w_i w_j).
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) mat(i, j) /= std::sqrt(w[i] * w[j]);
    return mat;
}

std::vector<double> trace_partial_sums(const SpectralDomain& domain, const PhysicalParams& params,
                                       std::span<const double> coeffs, const TraceOptions& opts) {
    const Eigen::MatrixXd mat = linearized_matrix(domain, params, coeffs, opts);
    const Eigen::MatrixXd sym = 0.5 * (mat + mat.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = solver.eigenvalues();  // ascending
    const int m = static_cast<int>(ev.size());
    std::vector<double> sums(m);
    double acc = 0.0, comp = 0.0;
    for (int n = 1; n <= m; ++n) {
        const double y = ev[m - n] - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        sums[n - 1] = acc;
    }
    return sums;
}

double trace_n(const SpectralDomain& domain, const PhysicalParams& params,
               std::span<const double> coeffs, int n, const TraceOptions& opts) {
    if (n < 1 || n > domain.mode_count())
        throw std::invalid_argument("trace_n: N out of range");
    return trace_partial_sums(domain, params, coeffs, opts)[n - 1];
}

TraceReport q_curve(const TrajectoryRecord& traj, const SpectralDomain& domain,
                    const PhysicalParams& params, int n_max, double transient_fraction,
                    const TraceOptions& opts) {
    if (n_max < 1 || n_max > domain.mode_count())
        throw std::invalid_argument("q_curve: n_max out of range");
    if (!(transient_fraction >= 0.0 && transient_fraction < 1.0))
        throw std::invalid_argument("q_curve: transient_fraction must be in [0,1)");
    if (traj.samples.empty()) throw std::invalid_argument("q_curve: empty trajectory");

    const double t_end = traj.samples.back().time;
    const double cut = transient_fraction * t_end;
    std::vector<int> window;
    for (int i = 0; i < static_cast<int>(traj.samples.size()); ++i)
        if (traj.samples[i].time >= cut) window.push_back(i);
    if (window.size() < 2) throw std::invalid_argument("q_curve: post-transient window too short");

    const int n_samples = static_cast<int>(window.size());
    std::vector<std::vector<double>> per_sample(n_samples);
    const bool parallel = !kernels::serial_forced() && n_samples >= 2;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < n_samples; ++i)
        per_sample[i] = trace_partial_sums(domain, params, traj.samples[window[i]].coeffs, opts);

    TraceReport report;
    report.window_start = traj.samples[window.front()].time;
    report.window_end = traj.samples[window.back()].time;
    report.samples_used = n_samples;
    const int half = n_samples / 2;
    for (int n = 1; n <= n_max; ++n) {
        // Fixed-order reduction: sample index order, independent of threads.
        double total = 0.0, first = 0.0, second = 0.0;
        for (int i = 0; i < n_samples; ++i) {
            total += per_sample[i][n - 1];
            (i < half ? first : second) += per_sample[i][n - 1];
        }
        report.n_values.push_back(n);
        report.q_values.push_back(total / n_samples);
        report.q_first_half.push_back(first / half);
        report.q_second_half.push_back(second / (n_samples - half));
    }
    double sup_diff = 0.0, sup_q = 0.0;
    for (int n = 0; n < n_max; ++n) {
        sup_diff = std::max(sup_diff,
                            std::abs(report.q_first_half[n] - report.q_second_half[n]));
        sup_q = std::max(sup_q, std::abs(report.q_values[n]));
    }
    report.split_disagreement = (sup_q > 0.0) ? sup_diff / sup_q : 0.0;
    report.low_confidence = report.split_disagreement > 0.10;
    report.n_star = empirical_dimension(report);
    return report;
}

std::optional<int> empirical_dimension(const TraceReport& report) {
    for (std::size_t i = 0; i < report.q_values.size(); ++i)
        if (report.q_values[i] < 0.0) return report.n_values[i];
    return std::nullopt;
}

}  // namespace nsv
