#include "nsv/spectral_domain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "nsv/constants.hpp"

namespace nsv {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

std::array<long long, 3> cross(const std::array<long long, 3>& a, const std::array<long long, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::array<double, 3> normalized(const std::array<long long, 3>& v) {
    const double n = std::sqrt(double(v[0]) * v[0] + double(v[1]) * v[1] + double(v[2]) * v[2]);
    return {v[0] / n, v[1] / n, v[2] / n};
}

bool lex_less(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    return std::tie(a[0], a[1], a[2]) < std::tie(b[0], b[1], b[2]);
}
}  // namespace

SpectralDomain SpectralDomain::torus(double side_length, int kmax) {
    if (!(side_length > 0.0))
        throw std::invalid_argument("torus: side_length must be positive");
    if (kmax < 1)
        throw std::invalid_argument("torus: kmax must be >= 1");

    SpectralDomain d;
    d.kind_ = DomainKind::Torus;
    d.side_length_ = side_length;
    d.kmax_ = kmax;
    d.volume_ = side_length * side_length * side_length;
    const double kappa0 = 2.0 * kPi / side_length;

    // Canonical representatives of the +-k pairs: first nonzero component > 0.
    std::vector<std::array<int, 3>> reps;
    for (int kx = -kmax; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kz = -kmax; kz <= kmax; ++kz) {
                const long long n2 = (long long)kx * kx + (long long)ky * ky + (long long)kz * kz;
                if (n2 == 0 || n2 > (long long)kmax * kmax) continue;
                if (kx > 0 || (kx == 0 && (ky > 0 || (ky == 0 && kz > 0))))
                    reps.push_back({kx, ky, kz});
            }
    std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
        const long long na = (long long)a[0] * a[0] + (long long)a[1] * a[1] + (long long)a[2] * a[2];
        const long long nb = (long long)b[0] * b[0] + (long long)b[1] * b[1] + (long long)b[2] * b[2];
        if (na != nb) return na < nb;
        return lex_less(a, b);
    });

    std::map<std::array<int, 3>, int> pair_of_k;
    for (std::size_t p = 0; p < reps.size(); ++p) {
        const auto& k = reps[p];
        pair_of_k[k] = static_cast<int>(p);

        // Two exact integer polarizations: a1 = k x t, a2 = k x a1, with the
        // helper axis chosen so k x t != 0.
        const std::array<long long, 3> kl = {k[0], k[1], k[2]};
        const bool axis_x = (k[1] == 0 && k[2] == 0);
        const std::array<long long, 3> t = axis_x ? std::array<long long, 3>{0, 1, 0}
                                                  : std::array<long long, 3>{1, 0, 0};
        const auto a1 = cross(kl, t);
        const auto a2 = cross(kl, a1);

        WavevectorPair pair;
        pair.k = k;
        pair.kappa = {kappa0 * k[0], kappa0 * k[1], kappa0 * k[2]};
        pair.pol = {normalized(a1), normalized(a2)};

        const double lambda =
            kappa0 * kappa0 * (double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2]);
        const std::array<std::array<long long, 3>, 2> pol_int = {a1, a2};
        for (int j = 0; j < 2; ++j)
            for (int parity = 0; parity < 2; ++parity) {
                TorusMode m;
                m.k = k;
                m.pol_int = pol_int[j];
                m.pol = pair.pol[j];
                m.pair = static_cast<int>(p);
                m.pol_index = j;
                m.sine = (parity == 1);
                pair.mode_index[j][parity] = static_cast<int>(d.modes_.size());
                d.modes_.push_back(m);
                d.eigenvalues_.push_back(lambda);
            }
        d.pairs_.push_back(pair);
    }

    // Convolution stencil: for each ordered (p, q) and sign pair, record where
    // sp*k_p + sq*k_q lands, if it stays inside the basis. Only canonical
    // targets are kept — the anti-canonical sum is the conjugate decomposition
    // of -k_t and its mirror (-sp, -sq) is enumerated directly. Gather form
    // keyed by the target pair keeps the evaluation order fixed regardless of
    // thread count.
    d.interactions_.assign(d.pairs_.size(), {});
    for (int p = 0; p < static_cast<int>(d.pairs_.size()); ++p)
        for (int q = 0; q < static_cast<int>(d.pairs_.size()); ++q)
            for (int sp = -1; sp <= 1; sp += 2)
                for (int sq = -1; sq <= 1; sq += 2) {
                    const std::array<int, 3> kt = {sp * d.pairs_[p].k[0] + sq * d.pairs_[q].k[0],
                                                   sp * d.pairs_[p].k[1] + sq * d.pairs_[q].k[1],
                                                   sp * d.pairs_[p].k[2] + sq * d.pairs_[q].k[2]};
                    if (kt[0] < 0 || (kt[0] == 0 && (kt[1] < 0 || (kt[1] == 0 && kt[2] <= 0))))
                        continue;  // anti-canonical or zero
                    const auto it = pair_of_k.find(kt);
                    if (it == pair_of_k.end()) continue;
                    d.interactions_[it->second].push_back(
                        {p, q, static_cast<std::int8_t>(sp), static_cast<std::int8_t>(sq)});
                }
    return d;
}

SpectralDomain SpectralDomain::synthetic(int count, double volume) {
    if (count < 1)
        throw std::invalid_argument("synthetic: count must be >= 1");
    if (!(volume > 0.0))
        throw std::invalid_argument("synthetic: volume must be positive");
    SpectralDomain d;
    d.kind_ = DomainKind::Synthetic;
    d.volume_ = volume;
    const double scale = constant_set().c_bly * std::pow(volume, -2.0 / 3.0);
    d.eigenvalues_.resize(count);
    for (int k = 1; k <= count; ++k)
        d.eigenvalues_[k - 1] = scale * std::pow(double(k), 2.0 / 3.0);
    return d;
}

double SpectralDomain::side_length() const {
    if (!is_torus()) throw unsupported_operation("side_length: synthetic domain");
    return side_length_;
}

int SpectralDomain::kmax() const {
    if (!is_torus()) throw unsupported_operation("kmax: synthetic domain");
    return kmax_;
}

const std::vector<TorusMode>& SpectralDomain::modes() const {
    if (!is_torus()) throw unsupported_operation("modes: synthetic domain");
    return modes_;
}

const std::vector<WavevectorPair>& SpectralDomain::pairs() const {
    if (!is_torus()) throw unsupported_operation("pairs: synthetic domain");
    return pairs_;
}

const std::vector<std::vector<Interaction>>& SpectralDomain::interactions() const {
    if (!is_torus()) throw unsupported_operation("interactions: synthetic domain");
    return interactions_;
}

std::vector<double> SpectralDomain::apply_fractional_power(double s,
                                                           std::span<const double> coeffs) const {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("apply_fractional_power: s must lie in [0,1]");
    if (coeffs.size() != eigenvalues_.size())
        throw std::invalid_argument("apply_fractional_power: coefficient length mismatch");
    std::vector<double> out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        out[i] = std::pow(eigenvalues_[i], s) * coeffs[i];
    return out;
}

std::vector<SpectralDomain::BlyMargin> SpectralDomain::bly_margins(int n) const {
    if (n < 1 || n > mode_count())
        throw std::invalid_argument("bly_margins: n out of range");
    const double scale = constant_set().c_bly * std::pow(volume_, -2.0 / 3.0);
    std::vector<BlyMargin> margins(n);
    double sum = 0.0, comp = 0.0;  // Kahan: margins near zero are the artifact
    for (int k = 1; k <= n; ++k) {
        const double y = eigenvalues_[k - 1] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        const double bound = scale * std::pow(double(k), 2.0 / 3.0);
        margins[k - 1].pointwise = eigenvalues_[k - 1] - bound;
        margins[k - 1].mean = sum / k - bound;
    }
    return margins;
}

nlohmann::json SpectralDomain::to_json() const {
    nlohmann::json j;
    j["kind"] = is_torus() ? "torus" : "synthetic";
    j["volume"] = volume_;
    if (is_torus()) {
        j["side_length"] = side_length_;
        j["kmax"] = kmax_;
        nlohmann::json wv = nlohmann::json::array();
        for (const auto& m : modes_) wv.push_back({m.k[0], m.k[1], m.k[2]});
        j["wavevectors"] = wv;
    }
    j["eigenvalues"] = eigenvalues_;
    return j;
}

}  // namespace nsv
