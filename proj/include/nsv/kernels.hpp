#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nsv/spectral_domain.hpp"

namespace nsv::kernels {

/// Global switch the benchmark and determinism tests flip to run every kernel
/// on its serial path. Production kernels are written so that serial and
/// parallel execution produce bit-identical results (gather-form outputs,
/// plane-ordered reductions); this switch makes that claim testable.
void force_serial(bool on);
bool serial_forced();

/// Runs fn(jz) for jz in [0, n), in parallel unless serial is forced or the
/// grid is small. fn must write only to slots owned by jz.
void parallel_planes(int n, const std::function<void(int)>& fn);

/// Evaluates real torus-mode expansions on the uniform n^3 grid
/// x_j = (L/n) j. Phases are exact lattice fractions 2 pi (k.j)/n, looked up
/// in tables, so quadrature of trigonometric polynomials of per-component
/// degree < n is exact.
class GridEvaluator {
public:
    GridEvaluator(const SpectralDomain& domain, int n);

    int n() const { return n_; }
    double cell_volume() const { return cell_volume_; }

    /// Field values on plane jz: out[3*(jx*n + jy) + c], c = 0..2.
    void eval_plane(std::span<const double> coeffs, int jz, std::span<double> out) const;

    /// Field and gradient on plane jz: grad[9*(jx*n + jy) + 3*c + l] = d u_c / d x_l.
    void eval_plane_with_gradient(std::span<const double> coeffs, int jz, std::span<double> out,
                                  std::span<double> grad) const;

private:
    struct ModeEntry {
        int kx_mod, ky_mod, kz_mod;  // wavevector components mod n (nonnegative)
        std::array<double, 3> pol;
        std::array<double, 3> kappa;
        bool sine;
    };

    const SpectralDomain* domain_;
    int n_;
    double amplitude_;    // sqrt(2/V)
    double cell_volume_;  // V / n^3
    std::vector<ModeEntry> entries_;
    std::vector<double> cos_table_, sin_table_;
};

}  // namespace nsv::kernels
