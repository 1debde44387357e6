#pragma once

#include <functional>
#include <vector>

#include "rank1/differential.hpp"
#include "rank1/rng.hpp"
#include "rank1/submanifolds.hpp"

namespace rank1 {

// All samplers draw from the invariant probability measure of their space.
// The measure-space totals of the source material are bookkeeping factors
// applied at the verification layer, never baked into the samplers.

/// Uniform point: ambient Gaussian, normalized, gauge-fixed.
inline PointRep sample_point(const SpaceId& space, Rng& rng) {
    for (;;) {
        AmbientVec g = gaussian_vec(space.field(), space.ambient_slots(), rng);
        double n = g.norm();
        if (n > 1e-6) return PointRep(space, g * (1.0 / n));
    }
}

/// Uniform unit horizontal direction at p.
inline AmbientVec sample_unit_direction_at(const PointRep& p, Rng& rng) {
    for (;;) {
        AmbientVec g = gaussian_vec(p.v.field, p.v.slots(), rng);
        AmbientVec h = horizontal_project(p, g);
        double n = h.norm();
        if (n > 1e-6) return h * (1.0 / n);
    }
}

inline TangentVec sample_unit_tangent_at(const PointRep& p, Rng& rng) {
    return TangentVec{p, sample_unit_direction_at(p, rng)};
}

inline TangentVec sample_unit_tangent(const SpaceId& space, Rng& rng) {
    PointRep p = sample_point(space, rng);
    return sample_unit_tangent_at(p, rng);
}

inline Quat sample_unit_quaternion(Rng& rng) {
    for (;;) {
        Quat q(rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian());
        double n = q.norm();
        if (n > 1e-6) return q / n;
    }
}

inline Quat sample_unit_imaginary(Rng& rng) {
    for (;;) {
        Quat q(0.0, rng.gaussian(), rng.gaussian(), rng.gaussian());
        double n = q.norm();
        if (n > 1e-6) return q / n;
    }
}

/// Oriented geodesic of RP^n: an orthonormal pair spanning the great-circle
/// plane, distributed as the pushforward of the unit-tangent measure.
struct GeodesicRep {
    SpaceId space;       // RealProj
    AmbientVec v1, v2;   // orthonormal in R^{n+1}

    AmbientVec rep_at(double t) const { return v1 * std::cos(t) + v2 * std::sin(t); }

    PointRep point_at(double t) const { return PointRep(space, rep_at(t)); }

    /// Unit velocity at time t, transported to the gauge representative.
    TangentVec tangent_at(double t) const {
        AmbientVec rep = rep_at(t);
        PointRep p(space, rep);
        AmbientVec vel = v1 * (-std::sin(t)) + v2 * std::cos(t);
        return TangentVec{p, vel.scaled(dotF(rep, p.v))};
    }
};

inline GeodesicRep sample_geodesic(int n, Rng& rng) {
    SpaceId space = SpaceId::real_proj(n);
    PointRep x = sample_point(space, rng);
    AmbientVec u = sample_unit_direction_at(x, rng);
    return GeodesicRep{space, x.v, u};
}

/// Projective line through a uniform unit tangent (the measure pushed
/// forward from U(CP^N), normalized).
inline SubmanifoldHandle sample_line(int n, Rng& rng) {
    TangentVec t = sample_unit_tangent(SpaceId::complex_proj(n), rng);
    return line_through(t.base, t.u);
}

/// Quaternionic line through a uniform unit tangent.
inline SubmanifoldHandle sample_hline(int n, Rng& rng) {
    TangentVec t = sample_unit_tangent(SpaceId::quat_proj(n), rng);
    return hline_through(t.base, t.u);
}

/// Quaternionic 1-dimensional subspace of T_l HP^N, i.e. a uniform element
/// of Gr_1^H(l), carried by the oriented basis (u, J_I u, J_J u, J_K u).
struct TangentQuatLine {
    PointRep base;
    AmbientVec u;

    std::vector<AmbientVec> oriented_basis() const {
        return {u, u.scaled(Quat::i().conj()), u.scaled(Quat::j().conj()),
                u.scaled(Quat::k().conj())};
    }
};

inline TangentQuatLine sample_hline_at(const PointRep& l, Rng& rng) {
    return TangentQuatLine{l, sample_unit_direction_at(l, rng)};
}

/// Uniform point of the twistor fibre Z_l, returned as a point of
/// CP^{2N+1}: [x q] for a uniform unit quaternion q.
inline PointRep sample_twistor(const PointRep& l, Rng& rng) {
    if (l.space.family != Family::QuatProj)
        throw std::invalid_argument("sample_twistor: need a point of HP^N");
    Quat q = sample_unit_quaternion(rng);
    return PointRep(SpaceId::complex_proj(2 * l.space.param + 1),
                    unpack_to_complex_pairs(l.v.scaled(q)));
}

/// Element of C_2(tau): a tau-complex 2-plane V = span(f1, f1 s, f2, f2 s)
/// with f2 quaternionically orthogonal to f1, which is exactly the
/// totally complex condition of Definition-5.2 type.
struct C2Plane {
    PointRep base;
    QuatStructure structure;  // J_tau, right multiplication by s
    AmbientVec f1, f2;

    std::vector<AmbientVec> oriented_basis() const {
        return {f1, f1.scaled(structure.s), f2, f2.scaled(structure.s)};
    }
};

inline C2Plane sample_c2(const PointRep& l, const PointRep& tau, Rng& rng) {
    if (l.space.param < 2) throw std::invalid_argument("sample_c2: needs N >= 2");
    QuatStructure j = quaternionic_structure(l, tau);
    AmbientVec f1 = sample_unit_direction_at(l, rng);
    AmbientVec f2;
    for (;;) {
        AmbientVec g = horizontal_project(l, gaussian_vec(l.v.field, l.v.slots(), rng));
        g = g - f1.scaled(dotF(f1, g));
        double n = g.norm();
        if (n > 1e-6) {
            f2 = g * (1.0 / n);
            break;
        }
    }
    return C2Plane{l, j, f1, f2};
}

/// Adapted frame of Definition-5.1 type for (l, tau): e_{2i} = J_tau
/// e_{2i-1} and each consecutive 4-tuple spans a quaternionic line.
inline std::vector<AmbientVec> sample_frame(const PointRep& l, const PointRep& tau, Rng& rng) {
    QuatStructure j = quaternionic_structure(l, tau);
    const Quat s = j.s;
    // Orthonormal imaginary triple adapted to s.
    Quat seed = std::abs(s.x) < 0.9 ? Quat::i() : Quat::j();
    Quat s_perp = seed - s * dotR(s, seed);
    s_perp = s_perp / s_perp.norm();
    // Quaternionic orthonormal basis of the horizontal space.
    const int n = l.space.param;
    std::vector<AmbientVec> flags;
    while (static_cast<int>(flags.size()) < n) {
        AmbientVec g = horizontal_project(l, gaussian_vec(l.v.field, l.v.slots(), rng));
        for (const auto& f : flags) g = g - f.scaled(dotF(f, g));
        double nn = g.norm();
        if (nn > 1e-6) flags.push_back(g * (1.0 / nn));
    }
    std::vector<AmbientVec> frame;
    frame.reserve(static_cast<std::size_t>(4 * n));
    for (const auto& f : flags) {
        AmbientVec e1 = f.scaled(sample_unit_quaternion(rng));
        double theta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        Quat spin = s_perp * std::cos(theta) + (s * s_perp) * std::sin(theta);
        AmbientVec e3 = e1.scaled(spin);
        frame.push_back(e1);
        frame.push_back(e1.scaled(s));
        frame.push_back(e3);
        frame.push_back(e3.scaled(s));
    }
    return frame;
}

/// Haar-distributed element of O(n+1), U(N+1) or Sp(N+1): Gram-Schmidt
/// over the base field applied to a Gaussian matrix.
inline QMatrix haar_isometry(const SpaceId& space, Rng& rng) {
    const int slots = space.ambient_slots();
    std::vector<AmbientVec> cols;
    while (static_cast<int>(cols.size()) < slots) {
        AmbientVec g = gaussian_vec(space.field(), slots, rng);
        for (const auto& c : cols) g = g - c.scaled(dotF(c, g));
        double n = g.norm();
        if (n > 1e-6) cols.push_back(g * (1.0 / n));
    }
    return QMatrix::from_columns(cols);
}

/// Uniform element of C(HP^N): Haar-symplectic rotation of the standard
/// totally complex model W = span_C(e0, e1, e2).
inline SubmanifoldHandle sample_cp2_space(int n, Rng& rng) {
    if (n < 2) throw std::invalid_argument("sample_cp2_space: needs N >= 2");
    SpaceId space = SpaceId::quat_proj(n);
    return totally_geodesic_cp2(space, haar_isometry(space, rng));
}

/// Monte-Carlo averages against the invariant probability measures.
inline Estimate integrate_over_points(const SpaceId& space,
                                      const std::function<double(const PointRep&)>& f,
                                      const SamplerSpec& spec) {
    return mc_estimate(spec, [&](Rng& rng) { return f(sample_point(space, rng)); });
}

inline Estimate integrate_over_unit_tangents(const SpaceId& space,
                                             const std::function<double(const TangentVec&)>& f,
                                             const SamplerSpec& spec) {
    return mc_estimate(spec, [&](Rng& rng) { return f(sample_unit_tangent(space, rng)); });
}

/// Volume-weighted variant: total mass times the probability average.
inline Estimate integrate_over_points_weighted(const SpaceId& space,
                                               const std::function<double(const PointRep&)>& f,
                                               const SamplerSpec& spec) {
    Estimate e = integrate_over_points(space, f, spec);
    return e.scaled(space_volume(space).to_double());
}

}  // namespace rank1
