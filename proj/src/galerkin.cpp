#include "nsv/galerkin.hpp"

#include <cmath>
#include <complex>

#include <omp.h>

#include "nsv/kernels.hpp"
#include "nsv/rng.hpp"

namespace nsv {

namespace {

using complex3 = std::array<std::complex<double>, 3>;

// Complex amplitudes at the canonical wavevector of each pair:
//   uhat_p = (1/2) sqrt(2/V) sum_j (c_cos_j - i c_sin_j) pol_j,
// so that u(x) = sum_p [uhat_p e^{i kappa_p.x} + conj].
std::vector<complex3> pair_amplitudes(const SpectralDomain& domain,
                                      std::span<const double> coeffs) {
    const auto& pairs = domain.pairs();
    const double amp = 0.5 * std::sqrt(2.0 / domain.volume());
    std::vector<complex3> uhat(pairs.size(), complex3{});
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        for (int j = 0; j < 2; ++j) {
            const double cc = coeffs[pairs[p].mode_index[j][0]];
            const double cs = coeffs[pairs[p].mode_index[j][1]];
            const std::complex<double> a(amp * cc, -amp * cs);
            for (int c = 0; c < 3; ++c) uhat[p][c] += a * pairs[p].pol[j][c];
        }
    }
    return uhat;
}

// Shared core of nonlinear_term / convection_bilinear: Galerkin coefficients
// of (a.grad)b from the precomputed pair amplitudes. The projection Pi is
// implicit in testing against divergence-free modes. Gather form: each target
// pair sums its interaction list in a fixed order, so results are independent
// of the thread count.
std::vector<double> convolve(const SpectralDomain& domain, const std::vector<complex3>& ahat,
                             const std::vector<complex3>& bhat) {
    const auto& pairs = domain.pairs();
    const auto& lists = domain.interactions();
    const int n_pairs = static_cast<int>(pairs.size());
    std::vector<double> out(domain.mode_count(), 0.0);
    const double proj = std::sqrt(2.0 * domain.volume());
    const bool parallel = !kernels::serial_forced() && n_pairs >= 64;

#pragma omp parallel for schedule(static) if (parallel)
    for (int t = 0; t < n_pairs; ++t) {
        complex3 w{};
        for (const auto& e : lists[t]) {
            const complex3& ap = ahat[e.p];
            const complex3& bq = bhat[e.q];
            const auto& kq = pairs[e.q].kappa;
            // (ahat'.kappa'') with ahat' = ahat or its conjugate, kappa'' = sq*kappa_q.
            std::complex<double> adotk(0.0, 0.0);
            for (int c = 0; c < 3; ++c) {
                const std::complex<double> av = (e.sp > 0) ? ap[c] : std::conj(ap[c]);
                adotk += av * (double(e.sq) * kq[c]);
            }
            const std::complex<double> iak(-adotk.imag(), adotk.real());  // i * adotk
            for (int c = 0; c < 3; ++c) {
                const std::complex<double> bv = (e.sq > 0) ? bq[c] : std::conj(bq[c]);
                w[c] += iak * bv;
            }
        }
        for (int j = 0; j < 2; ++j) {
            double re = 0.0, im = 0.0;
            for (int c = 0; c < 3; ++c) {
                re += pairs[t].pol[j][c] * w[c].real();
                im += pairs[t].pol[j][c] * w[c].imag();
            }
            out[pairs[t].mode_index[j][0]] = proj * re;
            out[pairs[t].mode_index[j][1]] = -proj * im;
        }
    }
    return out;
}

struct Stepper {
    const SpectralDomain* domain;
    const PhysicalParams* params;
    double dt;
    std::vector<double> prop, solve, g;  // CN factors and premultiplied forcing

    Stepper(const SpectralDomain& d, const PhysicalParams& p, double step_dt)
        : domain(&d), params(&p), dt(step_dt) {
        if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
        if (!d.is_torus()) throw unsupported_operation("step: synthetic domain");
        if (static_cast<int>(p.forcing.size()) != d.mode_count())
            throw std::invalid_argument("step: forcing length mismatch");
        const int m = d.mode_count();
        prop.resize(m);
        solve.resize(m);
        g.resize(m);
        for (int k = 0; k < m; ++k) {
            const double mass = p.epsilon + std::pow(d.eigenvalues()[k], p.s);
            const double rate = p.nu * d.eigenvalues()[k] / mass;
            prop[k] = 1.0 - 0.5 * dt * rate;
            solve[k] = 1.0 / (1.0 + 0.5 * dt * rate);
            g[k] = p.forcing[k] / mass;
        }
    }

    // G(u) = (h - N(u)) / (eps + A^s), the explicitly treated part.
    std::vector<double> explicit_part(const std::vector<double>& u) const {
        std::vector<double> n = nonlinear_term(*domain, u);
        for (int k = 0; k < domain->mode_count(); ++k) {
            const double mass = params->epsilon + std::pow(domain->eigenvalues()[k], params->s);
            n[k] = g[k] - n[k] / mass;
        }
        return n;
    }

    void advance(std::vector<double>& u, double time) const {
        const int m = domain->mode_count();
        const std::vector<double> gu = explicit_part(u);
        std::vector<double> pred(m);
        for (int k = 0; k < m; ++k) pred[k] = solve[k] * (prop[k] * u[k] + dt * gu[k]);
        const std::vector<double> gp = explicit_part(pred);
        double sq = 0.0;
        for (int k = 0; k < m; ++k) {
            u[k] = solve[k] * (prop[k] * u[k] + 0.5 * dt * (gu[k] + gp[k]));
            sq += u[k] * u[k];
        }
        if (!std::isfinite(sq))
            throw numerical_blowup("step: state became non-finite", time + dt);
    }
};

TrajectorySample make_sample(const SpectralDomain& domain, const PhysicalParams& params,
                             double time, const std::vector<double>& u) {
    TrajectorySample s;
    s.time = time;
    s.coeffs = u;
    const double as = std::pow(params.alpha, params.s);
    for (int k = 0; k < domain.mode_count(); ++k) {
        const double lam = domain.eigenvalues()[k];
        const double u2 = u[k] * u[k];
        s.energy += u2;
        s.voigt_energy += (1.0 + as * std::pow(lam, params.s)) * u2;
        s.enstrophy += lam * u2;
        s.forcing_pairing += params.forcing[k] * u[k];
    }
    return s;
}

}  // namespace

std::vector<double> nonlinear_term(const SpectralDomain& domain, std::span<const double> coeffs) {
    if (!domain.is_torus())
        throw unsupported_operation("nonlinear_term: wavevector metadata required");
    if (static_cast<int>(coeffs.size()) != domain.mode_count())
        throw std::invalid_argument("nonlinear_term: coefficient length mismatch");
    const auto uhat = pair_amplitudes(domain, coeffs);
    return convolve(domain, uhat, uhat);
}

std::vector<double> convection_bilinear(const SpectralDomain& domain, std::span<const double> a,
                                        std::span<const double> b) {
    if (!domain.is_torus())
        throw unsupported_operation("convection_bilinear: wavevector metadata required");
    if (static_cast<int>(a.size()) != domain.mode_count() ||
        static_cast<int>(b.size()) != domain.mode_count())
        throw std::invalid_argument("convection_bilinear: coefficient length mismatch");
    return convolve(domain, pair_amplitudes(domain, a), pair_amplitudes(domain, b));
}

std::vector<double> convection_jacobian_apply(const SpectralDomain& domain,
                                              std::span<const double> u,
                                              std::span<const double> v) {
    std::vector<double> out = convection_bilinear(domain, u, v);
    const std::vector<double> vu = convection_bilinear(domain, v, u);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += vu[k];
    return out;
}

std::vector<double> nonlinear_term_reference(const SpectralDomain& domain,
                                             std::span<const double> coeffs) {
    if (!domain.is_torus())
        throw unsupported_operation("nonlinear_term_reference: wavevector metadata required");
    if (static_cast<int>(coeffs.size()) != domain.mode_count())
        throw std::invalid_argument("nonlinear_term_reference: coefficient length mismatch");
    const int n = 3 * domain.kmax() + 1;  // integrand degree is 3 kmax: quadrature exact
    const kernels::GridEvaluator grid(domain, n);
    const int m = domain.mode_count();
    const auto& modes = domain.modes();
    const double amp = std::sqrt(2.0 / domain.volume());

    std::vector<double> field(std::size_t(3) * n * n), gradient(std::size_t(9) * n * n);
    std::vector<double> acc(m, 0.0);
    for (int jz = 0; jz < n; ++jz) {
        grid.eval_plane_with_gradient(coeffs, jz, field, gradient);
        for (int jx = 0; jx < n; ++jx)
            for (int jy = 0; jy < n; ++jy) {
                const double* u = field.data() + std::size_t(3) * (n * jx + jy);
                const double* gu = gradient.data() + std::size_t(9) * (n * jx + jy);
                double conv[3];
                for (int c = 0; c < 3; ++c)
                    conv[c] = u[0] * gu[3 * c + 0] + u[1] * gu[3 * c + 1] + u[2] * gu[3 * c + 2];
                for (int i = 0; i < m; ++i) {
                    const auto& md = modes[i];
                    const long long r = (long long)md.k[0] * jx + (long long)md.k[1] * jy +
                                        (long long)md.k[2] * jz;
                    const double phase = 2.0 * 3.141592653589793238462643383279502884 *
                                         double(((r % n) + n) % n) / n;
                    const double t = md.sine ? std::sin(phase) : std::cos(phase);
                    acc[i] += (conv[0] * md.pol[0] + conv[1] * md.pol[1] + conv[2] * md.pol[2]) *
                              amp * t;
                }
            }
    }
    for (int i = 0; i < m; ++i) acc[i] *= grid.cell_volume();
    return acc;
}

GalerkinState step(const GalerkinState& state, const PhysicalParams& params,
                   const SpectralDomain& domain, double dt) {
    if (static_cast<int>(state.coeffs.size()) != domain.mode_count())
        throw std::invalid_argument("step: state length mismatch");
    const Stepper stepper(domain, params, dt);
    GalerkinState next = state;
    stepper.advance(next.coeffs, state.time);
    next.time = state.time + dt;
    return next;
}

TrajectoryRecord simulate(const GalerkinState& u0, const PhysicalParams& params,
                          const SpectralDomain& domain, double t_final, double dt,
                          int sample_every) {
    if (!(t_final > 0.0)) throw std::invalid_argument("simulate: t_final must be positive");
    if (sample_every < 1) throw std::invalid_argument("simulate: sample_every must be >= 1");
    if (static_cast<int>(u0.coeffs.size()) != domain.mode_count())
        throw std::invalid_argument("simulate: state length mismatch");
    const Stepper stepper(domain, params, dt);
    const long long n_steps = std::llround(t_final / dt);
    if (n_steps < 1) throw std::invalid_argument("simulate: t_final shorter than one step");
    if (n_steps % sample_every != 0)
        throw std::invalid_argument(
            "simulate: t_final/dt must be a multiple of sample_every (uniform samples)");

    TrajectoryRecord traj;
    traj.sample_dt = dt * sample_every;
    std::vector<double> u = u0.coeffs;
    traj.samples.push_back(make_sample(domain, params, u0.time, u));
    for (long long i = 0; i < n_steps; ++i) {
        stepper.advance(u, u0.time + double(i) * dt);
        if ((i + 1) % sample_every == 0)
            traj.samples.push_back(make_sample(domain, params, u0.time + double(i + 1) * dt, u));
    }
    return traj;
}

ResidualSeries energy_residual(const TrajectoryRecord& traj, const PhysicalParams& params) {
    if (traj.samples.size() < 3)
        throw std::invalid_argument("energy_residual: need at least 3 samples");
    ResidualSeries out;
    const double dt = traj.sample_dt;
    for (std::size_t i = 1; i + 1 < traj.samples.size(); ++i) {
        const double dv =
            (traj.samples[i + 1].voigt_energy - traj.samples[i - 1].voigt_energy) / (2.0 * dt);
        const double r = 0.5 * params.epsilon * dv + params.nu * traj.samples[i].enstrophy -
                         traj.samples[i].forcing_pairing;
        out.times.push_back(traj.samples[i].time);
        out.values.push_back(r);
        out.max_abs = std::max(out.max_abs, std::abs(r));
    }
    return out;
}

EnstrophyCheck mean_enstrophy_check(const TrajectoryRecord& traj, const PhysicalParams& params,
                                    const SpectralDomain& domain, double transient_fraction) {
    if (!(transient_fraction >= 0.0 && transient_fraction < 1.0))
        throw std::invalid_argument("mean_enstrophy_check: transient_fraction must be in [0,1)");
    EnstrophyCheck out;
    double h2 = 0.0;
    for (double h : params.forcing) h2 += h * h;
    if (h2 == 0.0) {
        out.zero_forcing = true;
        return out;
    }
    const double t_end = traj.samples.back().time;
    const double cut = transient_fraction * t_end;
    double sum = 0.0;
    long long count = 0;
    for (const auto& s : traj.samples)
        if (s.time >= cut) {
            sum += s.enstrophy;
            ++count;
        }
    if (count == 0)
        throw std::invalid_argument("mean_enstrophy_check: empty post-transient window");
    out.mean_enstrophy = sum / double(count);
    out.ratio = out.mean_enstrophy * params.nu * params.nu * domain.eigenvalues()[0] / h2;
    return out;
}

AbsorbingReport absorbing_check(const PhysicalParams& params, const SpectralDomain& domain,
                                const std::vector<double>& radii, double t_final, double dt,
                                std::uint64_t seed) {
    AbsorbingReport report;
    report.radii = radii;
    const double as = std::pow(params.alpha, params.s);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] >= 0.0))
            throw std::invalid_argument("absorbing_check: radii must be nonnegative");
        GalerkinState u0;
        u0.coeffs.assign(domain.mode_count(), 0.0);
        if (radii[i] > 0.0) {
            u0.coeffs = random_coefficients(domain.mode_count(), mix_seed(seed, i));
            double vn = 0.0;
            for (int k = 0; k < domain.mode_count(); ++k)
                vn += (1.0 + as * std::pow(domain.eigenvalues()[k], params.s)) * u0.coeffs[k] *
                      u0.coeffs[k];
            const double scale = radii[i] / std::sqrt(vn);
            for (double& c : u0.coeffs) c *= scale;
        }
        const int n_steps = static_cast<int>(std::llround(t_final / dt));
        const TrajectoryRecord traj = simulate(u0, params, domain, t_final, dt, n_steps);
        report.final_voigt_energy.push_back(traj.samples.back().voigt_energy);
    }
    double lo = report.final_voigt_energy.empty() ? 0.0 : report.final_voigt_energy[0];
    double hi = lo;
    for (double v : report.final_voigt_energy) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    report.band_ratio = (lo > 0.0) ? hi / lo : 0.0;
    return report;
}

std::vector<double> random_coefficients(int m, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> v(m);
    for (double& x : v) x = rng.next_gaussian();
    return v;
}

}  // namespace nsv
