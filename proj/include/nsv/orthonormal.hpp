#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsv/spectral_domain.hpp"

namespace nsv {

/// Inner products used by the inequality checks; all are diagonal in the
/// eigenbasis with per-mode weights
///   L2: 1,   H1: lambda,   HsA(s): lambda^s,   VsAlpha(eps,s): eps + lambda^s.
enum class MetricKind { L2, H1, HsA, VsAlpha };

struct MetricSpec {
    MetricKind kind = MetricKind::L2;
    double s = 1.0;
    double epsilon = 0.0;

    static MetricSpec l2() { return {MetricKind::L2, 1.0, 0.0}; }
    static MetricSpec h1() { return {MetricKind::H1, 1.0, 0.0}; }
    static MetricSpec hsa(double s) { return {MetricKind::HsA, s, 0.0}; }
    static MetricSpec vs_alpha(double epsilon, double s) {
        return {MetricKind::VsAlpha, s, epsilon};
    }
};

std::vector<double> metric_weights(const SpectralDomain& domain, const MetricSpec& metric);

/// N coefficient vectors tagged with the inner product they are (sub)orthonormal in.
struct OrthFamily {
    std::vector<std::vector<double>> vectors;  // N x M
    MetricSpec metric;
    int n() const { return static_cast<int>(vectors.size()); }
};

/// Weighted modified Gram-Schmidt (two passes); Gram = I to ~1e-13.
std::vector<std::vector<double>> orthonormalize(std::span<const std::vector<double>> vectors,
                                                std::span<const double> weights);

double max_gram_eigenvalue(std::span<const std::vector<double>> vectors,
                           std::span<const double> weights);

/// Orthonormalizes N seeded Gaussian coefficient vectors in the requested
/// metric. Deterministic per seed.
OrthFamily random_orthonormal(const SpectralDomain& domain, int n, const MetricSpec& metric,
                              std::uint64_t seed);

struct SubOrthResult {
    bool ok = false;
    double max_gram_eigenvalue = 0.0;
};

/// True iff the largest Gram eigenvalue in the family's metric is <= 1 + 1e-12.
SubOrthResult is_suborthonormal(const SpectralDomain& domain, const OrthFamily& family);

/// Grid-quadrature norms of the density rho(x) = sum_i |theta_i(x)|^2 and the
/// exact spectral gradient sum R = sum_i ||grad theta_i||^2. The uniform
/// periodic grid integrates trigonometric polynomials of per-component degree
/// < grid_per_dim exactly, so rho (degree 2 kmax) and rho^2 (4 kmax) are exact
/// at the required grid_per_dim >= 4 kmax + 1; rho^3 and |theta|^3 converge
/// under refinement (doubling the grid is the accuracy check).
struct RhoNorms {
    double integral = 0.0;  // int rho = Gram trace
    double l2 = 0.0;
    double l3 = 0.0;
    double grad_sum = 0.0;
    std::vector<double> theta_l3_sq;  // ||theta_i||_{L^3}^2
};
RhoNorms rho_norms(const SpectralDomain& domain, const OrthFamily& family, int grid_per_dim);

/// Lieb-Thirring margin for an L2-suborthonormal family:
///   C_LT^{3/8} C_Sob6^{3/4} R^{3/4} - ||rho||_{L^2}   (positive = inequality holds).
double check_lt(const SpectralDomain& domain, const OrthFamily& family);

/// CLR-type margins for an HsA(s)-suborthonormal family, s in [1/2,1]:
/// small branch for s <= 3/4, big branch for s >= 3/4, both at s = 3/4.
/// Uses the uniform interval CLR constant.
struct ClrMargins {
    std::optional<double> small_branch;
    std::optional<double> big_branch;
    double rho_l2 = 0.0;
};
ClrMargins check_clr(const SpectralDomain& domain, const OrthFamily& family, double s);

/// Min-max estimate margin for theta_k = (eps + A^s)^{-1/2} theta_bar_k with
/// theta_bar L2-orthonormal:
///   RHS = (3/2) C_Sob6 |Omega|^{(2/3)(s-1/2)} C_BLY^{1/2-s} N^{(2/3)(2-s)},
///   LHS = sum ||theta_k||^2_{L^3} by grid quadrature; margin = RHS - LHS.
/// Evaluated for the lowest-N-eigenmode family and a seeded random family.
struct MinmaxResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};
struct MinmaxMargins {
    MinmaxResult eigenmode;
    MinmaxResult random;
};
MinmaxMargins check_minmax(const SpectralDomain& domain, double epsilon, double s, int n,
                           std::uint64_t seed, int grid_per_dim);

/// Campaigns behind `verify`: embarrassingly parallel over trials, merged in
/// trial order. Hard assertions (exit-code-3 material) are separated from
/// torus findings, which are itemized but never fail the campaign.
struct CampaignViolation {
    std::uint64_t seed = 0;
    int n = 0;
    double s = 0.0;
    double margin = 0.0;
    std::string check;
};
struct CampaignReport {
    std::string suite;
    int trials = 0;
    double min_margin = 0.0;
    std::vector<double> margins;
    std::vector<CampaignViolation> violations;
    bool hard_failure = false;
};

CampaignReport lt_campaign(const SpectralDomain& domain, int trials, std::uint64_t seed,
                           int n_cap);
CampaignReport clr_campaign(const SpectralDomain& domain, int trials, std::uint64_t seed,
                            int n_cap);
CampaignReport minmax_campaign(const SpectralDomain& domain, int trials, std::uint64_t seed,
                               int n_cap, int grid_per_dim);

}  // namespace nsv
