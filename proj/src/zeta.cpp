#include "nsv/zeta.hpp"

#include <cmath>
#include <stdexcept>

#include "nsv/constants.hpp"

namespace nsv {

namespace {

void validate(const SpectralDomain& domain, const ZetaQuery& q) {
    if (!(q.alpha > 0.0)) throw std::invalid_argument("zeta: alpha must be positive");
    if (!(q.s >= 0.0 && q.s <= 1.0)) throw std::invalid_argument("zeta: s must lie in [0,1]");
    if (q.n < 1 || q.n > domain.mode_count())
        throw std::invalid_argument("zeta: n out of range for this domain");
}

// Kahan accumulator; the margins downstream live near zero, so the partial
// sums must not lose the low-order bits.
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

struct BoundContext {
    double c_bly, beta, vol23, g1;
    double gest_scale;   // (3/5) C_BLY |Omega|^{-2/3} / (1+beta)
    double ggest_scale;  // (3/10) C_BLY |Omega|^{-2/3}
    double ggest_gate;   // C_BLY * G_1 (times N^{2/3} <= 1 decides applicability)
};

BoundContext bound_context(const SpectralDomain& domain, double alpha, double s) {
    BoundContext c;
    c.c_bly = constant_set().c_bly;
    c.vol23 = std::pow(domain.volume(), -2.0 / 3.0);
    c.g1 = alpha * c.vol23;
    c.beta = std::pow(c.c_bly, s) * std::pow(c.g1, s);
    c.gest_scale = 0.6 * c.c_bly * c.vol23 / (1.0 + c.beta);
    c.ggest_scale = 0.3 * c.c_bly * c.vol23;
    c.ggest_gate = c.c_bly * c.g1;
    return c;
}

ZetaMargins margins_at(const BoundContext& c, double alpha, double s, int n, double zeta_n) {
    ZetaMargins m;
    m.zeta_value = zeta_n;
    m.zeta_hat_value = std::pow(alpha, s) * zeta_n;
    const double n_pow = std::pow(double(n), (5.0 - 2.0 * s) / 3.0);
    m.gest_margin = zeta_n - c.gest_scale * n_pow;
    if (c.ggest_gate * std::pow(double(n), 2.0 / 3.0) <= 1.0)
        m.ggest_margin = zeta_n - c.ggest_scale * std::pow(double(n), 5.0 / 3.0);
    // gest1 bound equals alpha^s times the gest bound.
    m.gest1_margin = m.zeta_hat_value - std::pow(alpha, s) * c.gest_scale * n_pow;
    return m;
}

}  // namespace

double zeta(const SpectralDomain& domain, const ZetaQuery& q) {
    validate(domain, q);
    Kahan acc;
    for (int i = 0; i < q.n; ++i) {
        const double lam = domain.eigenvalues()[i];
        acc.add(lam / (1.0 + std::pow(q.alpha * lam, q.s)));
    }
    return acc.sum;
}

double zeta_hat(const SpectralDomain& domain, const ZetaQuery& q) {
    validate(domain, q);
    const double via_zeta = std::pow(q.alpha, q.s) * zeta(domain, q);
    Kahan acc;
    const double eps = std::pow(q.alpha, -q.s);
    for (int i = 0; i < q.n; ++i) {
        const double lam = domain.eigenvalues()[i];
        acc.add(lam / (eps + std::pow(lam, q.s)));
    }
    const double scale = std::max(std::abs(via_zeta), std::abs(acc.sum));
    if (std::abs(via_zeta - acc.sum) > 1e-12 * scale)
        throw std::logic_error("zeta_hat: alpha^s * zeta disagrees with the direct sum");
    return acc.sum;
}

ZetaMargins zeta_lower_bound_margins(const SpectralDomain& domain, const ZetaQuery& q) {
    validate(domain, q);
    const BoundContext c = bound_context(domain, q.alpha, q.s);
    return margins_at(c, q.alpha, q.s, q.n, zeta(domain, q));
}

std::vector<ZetaMargins> zeta_margin_sweep(const SpectralDomain& domain, double alpha, double s,
                                           int n_max) {
    validate(domain, {alpha, s, n_max});
    const BoundContext c = bound_context(domain, alpha, s);
    std::vector<ZetaMargins> out;
    out.reserve(n_max);
    Kahan acc;
    for (int n = 1; n <= n_max; ++n) {
        const double lam = domain.eigenvalues()[n - 1];
        acc.add(lam / (1.0 + std::pow(alpha * lam, s)));
        out.push_back(margins_at(c, alpha, s, n, acc.sum));
    }
    return out;
}

}  // namespace nsv
