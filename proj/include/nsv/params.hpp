#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nsv/spectral_domain.hpp"

namespace nsv {

/// Physical parameters of the regularized momentum equation in its scaled
/// form (eps + A^s) du/dt + Pi[(u.grad)u] + nu A u = h, with eps = alpha^{-s}.
/// `forcing` holds the coefficients h_k of h in the eigenbasis.
struct PhysicalParams {
    double nu = 0.0;
    double alpha = 0.0;
    double s = 1.0;
    double epsilon = 0.0;  // alpha^{-s}, derived and stored
    std::vector<double> forcing;

    static PhysicalParams make(double nu, double alpha, double s, std::vector<double> forcing) {
        if (!(nu > 0.0)) throw std::invalid_argument("PhysicalParams: nu must be positive");
        if (!(alpha > 0.0)) throw std::invalid_argument("PhysicalParams: alpha must be positive");
        if (!(s >= 0.5 && s <= 1.0))
            throw std::invalid_argument("PhysicalParams: s must lie in [1/2, 1]");
        PhysicalParams p;
        p.nu = nu;
        p.alpha = alpha;
        p.s = s;
        p.epsilon = std::pow(alpha, -s);
        p.forcing = std::move(forcing);
        return p;
    }
};

/// Diagonal of the scaled mass operator eps + A^s in the eigenbasis.
inline std::vector<double> mass_weights(const PhysicalParams& p, const SpectralDomain& d) {
    std::vector<double> w(d.mode_count());
    for (int i = 0; i < d.mode_count(); ++i)
        w[i] = p.epsilon + std::pow(d.eigenvalues()[i], p.s);
    return w;
}

}  // namespace nsv
