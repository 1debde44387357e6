#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>

#include "rank1/constants.hpp"
#include "rank1/differential.hpp"
#include "rank1/sampling.hpp"
#include "rank1/submanifolds.hpp"

namespace rank1 {

struct EnergyQuery {
    MapDescriptor map;
    double p = 2.0;
    SamplerSpec spec;

    EnergyQuery(MapDescriptor f, double p_, SamplerSpec s) : map(std::move(f)), p(p_), spec(s) {
        if (p < 1.0) throw std::invalid_argument("EnergyQuery: p must be >= 1");
    }
};

/// |dF_x|^2 summed over an orthonormal horizontal frame; no codomain frame
/// or SVD is needed for the Frobenius norm.
inline double energy_density_squared_norm(const MapDescriptor& f, const PointRep& x) {
    double acc = 0.0;
    for (const auto& e : tangent_frame(x)) acc += push_tangent(f, x, e).norm2();
    return acc;
}

/// p-energy density (sum sigma_i^2)^{p/2} at x.
inline double energy_density(const MapDescriptor& f, const PointRep& x, double p) {
    return std::pow(energy_density_squared_norm(f, x), p / 2.0);
}

/// E_p(F) = Vol(domain) * average density, with the exact value attached
/// for the identity at even integer p.
inline Estimate p_energy(const EnergyQuery& q) {
    const SpaceId domain = q.map.domain();
    Estimate avg = mc_estimate(q.spec, [&](Rng& rng) {
        return energy_density(q.map, sample_point(domain, rng), q.p);
    });
    Estimate e = avg.scaled(space_volume(domain).to_double());
    if (q.map.kind == MapDescriptor::Kind::Identity) {
        long pi = std::lround(q.p);
        if (std::abs(q.p - static_cast<double>(pi)) < 1e-12 && pi % 2 == 0) {
            BigInt dim_pow = 1;
            for (long i = 0; i < pi / 2; ++i) dim_pow *= domain.real_dim();
            e.exact = ExactConstant(BigRat(dim_pow)) * space_volume(domain);
        }
    }
    return e;
}

namespace detail {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 4> kGauss8Nodes = {0.1834346424956498, 0.5255324099163290,
                                                0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGauss8Weights = {0.3626837833783620, 0.3137066458778873,
                                                  0.2223810344533745, 0.1012285362903763};

}  // namespace detail

/// Mass of the image 1-cycle F(gamma) for a closed geodesic of RP^n:
/// integral of |dF(gamma'(t))| over [0, pi] by composite Gauss quadrature.
inline double curve_mass(const MapDescriptor& f, const GeodesicRep& gamma, int nodes = 128) {
    if (f.domain() != gamma.space) throw std::invalid_argument("curve_mass: domain mismatch");
    const int panels = std::max(1, nodes / 8);
    const double kPi = 3.14159265358979323846;
    const double width = kPi / panels;
    double acc = 0.0;
    for (int panel = 0; panel < panels; ++panel) {
        double mid = (panel + 0.5) * width;
        for (int g = 0; g < 4; ++g) {
            for (double sign : {-1.0, 1.0}) {
                double t = mid + sign * detail::kGauss8Nodes[static_cast<std::size_t>(g)] * width / 2.0;
                TangentVec vel = gamma.tangent_at(t);
                acc += detail::kGauss8Weights[static_cast<std::size_t>(g)] *
                       push_tangent(f, vel.base, vel.u).norm() * width / 2.0;
            }
        }
    }
    return acc;
}

/// Mass of the image current F(S) for a 2- or 4-dimensional handle S:
/// the integral over S of |det(dF restricted to TS)|, computed through the
/// isometric parametrization of the handle.
inline Estimate surface_mass(const MapDescriptor& f, const SubmanifoldHandle& handle,
                             const SamplerSpec& spec) {
    if (f.domain() != handle.ambient)
        throw std::invalid_argument("surface_mass: map domain must contain the handle");
    MapDescriptor composed = MapDescriptor::compose({handle.parametrization(), f});
    const SpaceId ref = handle.ref_space();
    Estimate avg = mc_estimate(spec, [&](Rng& rng) {
        PointRep r = sample_point(ref, rng);
        return det_restriction(composed, r, tangent_frame(r));
    });
    return avg.scaled(handle.volume().to_double());
}

/// Vol_g(M, F*h) = integral of |det dF| over the domain.
inline Estimate pullback_volume(const MapDescriptor& f, const SamplerSpec& spec) {
    const SpaceId domain = f.domain();
    if (domain.real_dim() > f.codomain().real_dim())
        throw std::invalid_argument("pullback_volume: domain dimension exceeds codomain");
    Estimate avg = mc_estimate(spec, [&](Rng& rng) {
        PointRep x = sample_point(domain, rng);
        return det_restriction(f, x, tangent_frame(x));
    });
    return avg.scaled(space_volume(domain).to_double());
}

/// The dimension-energy lower bound
///   E_p(F) >= m^{p/2} Vol_g(M, F*h)^{p/m} / Vol(M, g)^{(p-m)/m},
/// valid for p >= m = dim(M); equality iff dF is a homothety a.e.
/// (semiconformal when p = m).
inline double elementary_bound(int m, double p, double vol_pullback, double vol_domain) {
    if (p < m) throw std::invalid_argument("elementary_bound: requires p >= dim");
    return std::pow(static_cast<double>(m), p / 2.0) * std::pow(vol_pullback, p / m) /
           std::pow(vol_domain, (p - m) / m);
}

/// Exact version, defined when m | p, p/2 is integral, and the volumes are
/// exact single terms.
inline std::optional<ExactConstant> elementary_bound_exact(int m, int p,
                                                           const ExactConstant& vol_pullback,
                                                           const ExactConstant& vol_domain) {
    if (p < m || p % m != 0 || p % 2 != 0) return std::nullopt;
    if (!vol_domain.is_single_term()) return std::nullopt;
    BigInt m_pow = 1;
    for (int i = 0; i < p / 2; ++i) m_pow *= m;
    ExactConstant num = ExactConstant(BigRat(m_pow)) * vol_pullback.pow(static_cast<unsigned>(p / m));
    auto out = num.try_divide(vol_domain.pow(static_cast<unsigned>((p - m) / m)));
    if (!out) return std::nullopt;
    return *out;
}

enum class ConformalVerdict { HomothetyLike, SemiconformalLike, Generic };

inline std::string verdict_name(ConformalVerdict v) {
    switch (v) {
        case ConformalVerdict::HomothetyLike: return "homothety-like";
        case ConformalVerdict::SemiconformalLike: return "semiconformal-like";
        case ConformalVerdict::Generic: return "generic";
    }
    return "?";
}

/// Pointwise semiconformal-factor statistics: the anisotropy
/// sigma_max/sigma_min per sample and the spread of |dF| across points.
struct EqualityDiagnostics {
    double anisotropy_min = 0.0, anisotropy_max = 0.0, anisotropy_variance = 0.0;
    double norm_min = 0.0, norm_max = 0.0, norm_variance = 0.0;
    std::size_t samples = 0;
    ConformalVerdict verdict = ConformalVerdict::Generic;
};

inline EqualityDiagnostics equality_diagnostics(const MapDescriptor& f, const SamplerSpec& spec) {
    Rng rng(spec.seed);
    const std::size_t n = std::max<std::size_t>(2, std::min<std::size_t>(spec.samples, 512));
    double a_min = 1e300, a_max = 0.0, a_sum = 0.0, a_sum2 = 0.0;
    double n_min = 1e300, n_max = 0.0, n_sum = 0.0, n_sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        PointRep x = sample_point(f.domain(), rng);
        auto d = differential(f, x);
        double smax = d.singular_values(0);
        double smin = d.singular_values(d.singular_values.size() - 1);
        double ratio = smin > 1e-12 ? smax / smin : 1e300;
        double norm = std::sqrt(d.frobenius2());
        a_min = std::min(a_min, ratio);
        a_max = std::max(a_max, ratio);
        a_sum += ratio;
        a_sum2 += ratio * ratio;
        n_min = std::min(n_min, norm);
        n_max = std::max(n_max, norm);
        n_sum += norm;
        n_sum2 += norm * norm;
    }
    EqualityDiagnostics out;
    out.samples = n;
    out.anisotropy_min = a_min;
    out.anisotropy_max = a_max;
    out.anisotropy_variance =
        std::max(0.0, a_sum2 / n - (a_sum / n) * (a_sum / n));
    out.norm_min = n_min;
    out.norm_max = n_max;
    double nm = n_sum / n;
    out.norm_variance = std::max(0.0, n_sum2 / n - nm * nm);
    const bool conformal = out.anisotropy_max <= 1.0 + 1e-8;
    const bool constant_norm = nm > 0.0 && out.norm_variance / (nm * nm) <= 1e-8;
    if (conformal && constant_norm)
        out.verdict = ConformalVerdict::HomothetyLike;
    else if (conformal)
        out.verdict = ConformalVerdict::SemiconformalLike;
    else
        out.verdict = ConformalVerdict::Generic;
    return out;
}

}  // namespace rank1
