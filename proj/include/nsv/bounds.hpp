#pragma once

#include <optional>
#include <string>

#include "nsv/constants.hpp"
#include "nsv/params.hpp"
#include "nsv/spectral_domain.hpp"

namespace nsv {

/// The two dimensionless numbers everything depends on:
///   G  = |Omega|^{1/2} ||h||_{L^2} / nu^2   (Grashof number)
///   G1 = alpha |Omega|^{-2/3}               (regularization strength)
struct DimensionlessPair {
    double grashof = 0.0;  // >= 0
    double g1 = 0.0;       // > 0
};

DimensionlessPair grashof_numbers(const PhysicalParams& params, const SpectralDomain& domain);

enum class TheoremId { Est1, Est2, EstMid, Est3 };

const char* theorem_name(TheoremId id);

/// One evaluated dimension bound. `value` is real-valued (never rounded to an
/// integer here) so the homogeneity identities hold exactly; callers take
/// ceilings when they need a dimension. For Est3 `applicable` reflects the
/// smallness gate; the value is still reported for diagnostics.
struct BoundReport {
    TheoremId theorem_id;
    double value = 0.0;
    bool applicable = true;
    std::string gate_detail;                  // est3 only: both sides of the condition
    std::optional<double> companion_value;    // at s = 3/4: the other branch of bound_clr
    ConstantSet constants;                    // snapshot used for this evaluation
    ClrMode clr_mode = ClrMode::Uniform;
};

/// Min-max-only estimate, dim <= ((5/2) C6^3 C_BLY^{-3/2-s})^3
///                              ((1 + C_BLY^s G1^s)/G1^s)^3 G^6.  Always applicable.
BoundReport bound_minmax_only(double s, const DimensionlessPair& pair);

/// CLR-based estimate; dispatches on s:
///   s >= 3/4: dim <= ((5/3) sqrt(2/3) C_{s,CLR} C_BLY^{-3/2})^{3/2} (...)^{3/2} G^{3/2}
///   s <= 3/4: dim <= ((5/3) (2/3)^{2(1-s)} C_{s,CLR} C_BLY^{2s-3} C6^{6-8s})^{3/2}
///                    (...)^{3/2} G^{6(1-s)}
/// with the uniform interval constant. At s = 3/4 both branches are evaluated
/// (they coincide) and the companion value records the other branch.
BoundReport bound_clr(double s, const DimensionlessPair& pair);

/// Small-alpha estimate at s = 1,
///   dim <= ((20/9) C_BLY^{-2} C_LT^{1/2} C6 C_{1,CLR}^{2/3})^{9/13} G1^{-6/13} G^{18/13},
/// gated by G1^3 G^4 <= (9/20)^2 C_BLY^{-1/3} C_LT^{-1} C6^{-2} C_{1,CLR}^{-4/3}
/// (non-strict). The gate is evaluated first with the same constants snapshot.
BoundReport bound_small_alpha(const DimensionlessPair& pair);

/// Smallest value among {est1, est2/est_mid, and est3 when s == 1 and its
/// gate passes}.
BoundReport best_bound(double s, const DimensionlessPair& pair);

}  // namespace nsv
