#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "nsv/galerkin.hpp"
#include "nsv/params.hpp"
#include "nsv/spectral_domain.hpp"

namespace nsv {

struct TraceOptions {
    /// Use the non-scaled phase-space metric ((1 + alpha A)u, u) instead of the
    /// scaled ((eps + A^s)u, u). Only meaningful (and only allowed) at s = 1,
    /// where the small-alpha estimate is formulated in that metric.
    bool unscaled_metric = false;
};

/// Matrix of the linearized generator L_u = (eps+A^s)^{-1}(-nu A - B'(u)) in
/// the basis orthonormal with respect to the chosen metric, i.e.
/// D^{-1/2} (-nu Lambda - J(u)) D^{-1/2} with D the metric weights and J the
/// Galerkin Jacobian of the convection term. Torus only.
Eigen::MatrixXd linearized_matrix(const SpectralDomain& domain, const PhysicalParams& params,
                                  std::span<const double> coeffs, const TraceOptions& opts = {});

/// Cumulative sums of the descending eigenvalues of the symmetric part:
/// entry N-1 is Tr_N, the exact supremum of sum (L theta_k, theta_k) over
/// metric-orthonormal N-frames in the Galerkin subspace.
std::vector<double> trace_partial_sums(const SpectralDomain& domain, const PhysicalParams& params,
                                       std::span<const double> coeffs,
                                       const TraceOptions& opts = {});

/// Tr_N for one N (1 <= N <= M).
double trace_n(const SpectralDomain& domain, const PhysicalParams& params,
               std::span<const double> coeffs, int n, const TraceOptions& opts = {});

/// Volume-contraction exponents q(N) averaged over the post-transient window,
/// with a split-half convergence diagnostic. q(N) < 0 means N-dimensional
/// volumes contract along the sampled trajectory.
struct TraceReport {
    std::vector<int> n_values;
    std::vector<double> q_values;
    std::vector<double> q_first_half;
    std::vector<double> q_second_half;
    std::optional<int> n_star;   // smallest N with q(N) < 0
    double window_start = 0.0;
    double window_end = 0.0;
    int samples_used = 0;
    /// sup_N |q_first - q_second| / sup_N |q|; > 0.10 flags a short window.
    double split_disagreement = 0.0;
    bool low_confidence = false;
};

TraceReport q_curve(const TrajectoryRecord& traj, const SpectralDomain& domain,
                    const PhysicalParams& params, int n_max, double transient_fraction = 0.5,
                    const TraceOptions& opts = {});

std::optional<int> empirical_dimension(const TraceReport& report);

}  // namespace nsv
