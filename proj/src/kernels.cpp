#include "nsv/kernels.hpp"

#include <atomic>
#include <cmath>

#include <omp.h>

namespace nsv::kernels {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
std::atomic<bool> g_force_serial{false};
}  // namespace

void force_serial(bool on) { g_force_serial.store(on); }
bool serial_forced() { return g_force_serial.load(); }

void parallel_planes(int n, const std::function<void(int)>& fn) {
    const bool parallel = !serial_forced() && n >= 4;
#pragma omp parallel for schedule(static) if (parallel)
    for (int jz = 0; jz < n; ++jz) fn(jz);
}

GridEvaluator::GridEvaluator(const SpectralDomain& domain, int n)
    : domain_(&domain), n_(n) {
    if (!domain.is_torus())
        throw unsupported_operation("GridEvaluator: synthetic domain has no point values");
    if (n < 2) throw std::invalid_argument("GridEvaluator: grid_per_dim must be >= 2");
    amplitude_ = std::sqrt(2.0 / domain.volume());
    cell_volume_ = domain.volume() / (double(n) * n * n);
    cos_table_.resize(n);
    sin_table_.resize(n);
    for (int r = 0; r < n; ++r) {
        cos_table_[r] = std::cos(2.0 * kPi * r / n);
        sin_table_[r] = std::sin(2.0 * kPi * r / n);
    }
    entries_.reserve(domain.mode_count());
    for (const auto& m : domain.modes()) {
        ModeEntry e;
        e.kx_mod = ((m.k[0] % n) + n) % n;
        e.ky_mod = ((m.k[1] % n) + n) % n;
        e.kz_mod = ((m.k[2] % n) + n) % n;
        e.pol = m.pol;
        const double kappa0 = 2.0 * kPi / domain.side_length();
        e.kappa = {kappa0 * m.k[0], kappa0 * m.k[1], kappa0 * m.k[2]};
        e.sine = m.sine;
        entries_.push_back(e);
    }
}

void GridEvaluator::eval_plane(std::span<const double> coeffs, int jz,
                               std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t m = 0; m < entries_.size(); ++m) {
        const double c = coeffs[m];
        if (c == 0.0) continue;
        const ModeEntry& e = entries_[m];
        const double ax = c * amplitude_ * e.pol[0];
        const double ay = c * amplitude_ * e.pol[1];
        const double az = c * amplitude_ * e.pol[2];
        const int rz = int((std::int64_t(e.kz_mod) * jz) % n_);
        for (int jx = 0; jx < n_; ++jx) {
            int r = int((std::int64_t(e.kx_mod) * jx + rz) % n_);
            double* row = out.data() + std::size_t(3) * n_ * jx;
            for (int jy = 0; jy < n_; ++jy) {
                const double t = e.sine ? sin_table_[r] : cos_table_[r];
                row[3 * jy + 0] += ax * t;
                row[3 * jy + 1] += ay * t;
                row[3 * jy + 2] += az * t;
                r += e.ky_mod;
                if (r >= n_) r -= n_;
            }
        }
    }
}

void GridEvaluator::eval_plane_with_gradient(std::span<const double> coeffs, int jz,
                                             std::span<double> out,
                                             std::span<double> grad) const {
    std::fill(out.begin(), out.end(), 0.0);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t m = 0; m < entries_.size(); ++m) {
        const double c = coeffs[m];
        if (c == 0.0) continue;
        const ModeEntry& e = entries_[m];
        const double a[3] = {c * amplitude_ * e.pol[0], c * amplitude_ * e.pol[1],
                             c * amplitude_ * e.pol[2]};
        const int rz = int((std::int64_t(e.kz_mod) * jz) % n_);
        for (int jx = 0; jx < n_; ++jx) {
            int r = int((std::int64_t(e.kx_mod) * jx + rz) % n_);
            double* row = out.data() + std::size_t(3) * n_ * jx;
            double* grow = grad.data() + std::size_t(9) * n_ * jx;
            for (int jy = 0; jy < n_; ++jy) {
                const double t = e.sine ? sin_table_[r] : cos_table_[r];
                // d/dx_l of cos(kappa.x) is -kappa_l sin; of sin is +kappa_l cos.
                const double dt = e.sine ? cos_table_[r] : -sin_table_[r];
                for (int cc = 0; cc < 3; ++cc) {
                    row[3 * jy + cc] += a[cc] * t;
                    for (int l = 0; l < 3; ++l)
                        grow[9 * jy + 3 * cc + l] += a[cc] * e.kappa[l] * dt;
                }
                r += e.ky_mod;
                if (r >= n_) r -= n_;
            }
        }
    }
}

}  // namespace nsv::kernels
