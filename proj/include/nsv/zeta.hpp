#pragma once

#include <optional>
#include <vector>

#include "nsv/spectral_domain.hpp"

namespace nsv {

struct ZetaQuery {
    double alpha;  // > 0
    double s;      // in [0,1]
    int n;         // 1 <= n <= mode_count
};

/// zeta(alpha,s,N) = sum_{i<=N} lambda_i / (1 + (alpha lambda_i)^s),
/// an exact compensated partial sum over the N smallest eigenvalues.
double zeta(const SpectralDomain& domain, const ZetaQuery& q);

/// zeta_hat(alpha,s,N) = sum_{k<=N} lambda_k / (alpha^{-s} + lambda_k^s)
///                     = alpha^s zeta(alpha,s,N).
/// Both routes are evaluated; they must agree to rel 1e-12 or this throws
/// std::logic_error (internal consistency guard).
double zeta_hat(const SpectralDomain& domain, const ZetaQuery& q);

/// Signed margins (computed sum minus printed lower bound) for the three
/// spectral lower bounds, with G_1 = alpha |Omega|^{-2/3} derived from the
/// query and the domain volume:
///   gest:  zeta >= (3/5) C_BLY |Omega|^{-2/3} N^{(5-2s)/3} / (1 + C_BLY^s G_1^s)
///   ggest: zeta >= (3/10) C_BLY |Omega|^{-2/3} N^{5/3},
///          applicable only when C_BLY G_1 N^{2/3} <= 1 (non-strict)
///   gest1: zeta_hat >= (3/5) |Omega|^{-2(1-s)/3} C_BLY G_1^s N^{(5-2s)/3}
///                      / (1 + C_BLY^s G_1^s)
struct ZetaMargins {
    double zeta_value = 0.0;
    double zeta_hat_value = 0.0;
    double gest_margin = 0.0;
    std::optional<double> ggest_margin;  // present iff its gate holds
    double gest1_margin = 0.0;
};

ZetaMargins zeta_lower_bound_margins(const SpectralDomain& domain, const ZetaQuery& q);

/// Margins for every N = 1..n_max in one cumulative pass (the campaign and
/// CLI path; one entry per N, identical to calling the scalar version N times).
std::vector<ZetaMargins> zeta_margin_sweep(const SpectralDomain& domain, double alpha, double s,
                                           int n_max);

}  // namespace nsv
