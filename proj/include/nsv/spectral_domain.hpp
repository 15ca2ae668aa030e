#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nsv/errors.hpp"

#include <json.hpp>

namespace nsv {

enum class DomainKind { Torus, Synthetic };

/// One real divergence-free Fourier mode sqrt(2/V) * pol * cos/sin(kappa.x).
/// `pol_int` is the unnormalized integer polarization; its dot product with
/// the wavevector is zero in exact integer arithmetic, which is what the
/// divergence-free invariant tests check.
struct TorusMode {
    std::array<int, 3> k;                 // canonical wavevector of the +-k pair
    std::array<long long, 3> pol_int;     // exact integer polarization (unnormalized)
    std::array<double, 3> pol;            // unit polarization
    int pair;                             // index into pairs()
    int pol_index;                        // 0 or 1
    bool sine;                            // false: cos, true: sin
};

/// A +-k wavevector pair with its two polarizations and the indices of its
/// four real modes, keyed [pol_index][parity] with parity 0 = cos, 1 = sin.
struct WavevectorPair {
    std::array<int, 3> k;
    std::array<double, 3> kappa;                       // (2 pi / L) k
    std::array<std::array<double, 3>, 2> pol;
    std::array<std::array<int, 2>, 2> mode_index;
};

/// Convolution stencil entry: kappa_target = sp * kappa_p + sq * kappa_q.
struct Interaction {
    int p, q;
    std::int8_t sp, sq;
};

/// Explicit, computable surrogate for the Stokes eigenbasis: either the real
/// divergence-free Fourier basis on a periodic box (zero-mean, so lambda > 0),
/// or a synthetic eigenvalue sequence saturating the Berezin-Li-Yau bound,
/// lambda_k = C_BLY |Omega|^{-2/3} k^{2/3}.
///
/// Immutable after construction; safe to share across threads.
class SpectralDomain {
public:
    /// All real divergence-free Fourier modes with 0 < |k| <= kmax on the
    /// periodic box [0, side_length)^3. Eigenvalues (2 pi / L)^2 |k|^2 sorted
    /// nondecreasing; ties ordered by lexicographic wavevector, then
    /// polarization index, then cos before sin.
    static SpectralDomain torus(double side_length, int kmax);

    /// The BLY-extremal sequence; no wavevector metadata, so the nonlinearity
    /// is unavailable.
    static SpectralDomain synthetic(int count, double volume);

    DomainKind kind() const { return kind_; }
    double volume() const { return volume_; }
    int mode_count() const { return static_cast<int>(eigenvalues_.size()); }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }

    bool is_torus() const { return kind_ == DomainKind::Torus; }
    double side_length() const;  // torus only
    int kmax() const;            // torus only

    const std::vector<TorusMode>& modes() const;          // torus only
    const std::vector<WavevectorPair>& pairs() const;     // torus only
    const std::vector<std::vector<Interaction>>& interactions() const;  // torus only

    /// A^s applied in coefficients: component-wise multiplication by lambda_k^s.
    /// Requires s in [0,1] and coeffs.size() == mode_count().
    std::vector<double> apply_fractional_power(double s, std::span<const double> coeffs) const;

    /// Per-k Berezin-Li-Yau margins, k = 1..n, for both inequalities of the
    /// chain lambda_k >= (lambda_1+...+lambda_k)/k >= C_BLY |Omega|^{-2/3} k^{2/3}:
    ///   pointwise_k = lambda_k - C_BLY |Omega|^{-2/3} k^{2/3}
    ///   mean_k      = (lambda_1+...+lambda_k)/k - C_BLY |Omega|^{-2/3} k^{2/3}.
    /// The synthetic sequence saturates the pointwise form (margin 0 by
    /// construction); the mean form is negative there for k >= 2. Signed; no
    /// pass/fail judgment on the torus (the constant is proved for the
    /// Dirichlet Stokes operator).
    struct BlyMargin {
        double pointwise = 0.0;
        double mean = 0.0;
    };
    std::vector<BlyMargin> bly_margins(int n) const;

    nlohmann::json to_json() const;

private:
    SpectralDomain() = default;

    DomainKind kind_ = DomainKind::Synthetic;
    double volume_ = 0.0;
    double side_length_ = 0.0;
    int kmax_ = 0;
    std::vector<double> eigenvalues_;
    std::vector<TorusMode> modes_;
    std::vector<WavevectorPair> pairs_;
    std::vector<std::vector<Interaction>> interactions_;
};

}  // namespace nsv
