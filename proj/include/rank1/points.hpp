#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rank1/ambient.hpp"
#include "rank1/space.hpp"

namespace rank1 {

namespace detail {

/// Canonical gauge: right-multiply by a unit field scalar so that the first
/// coordinate of non-negligible magnitude becomes a positive real.  A
/// second application is a bit-identical no-op.
inline void gauge_fix(const SpaceId& space, AmbientVec& v) {
    if (!space.has_gauge()) return;
    for (std::size_t s = 0; s < v.c.size(); ++s) {
        Quat& q = v.c[s];
        double n2 = q.norm2();
        if (n2 > 1e-14) {
            // Already canonical: exact no-op, which makes a second
            // application bit-identical.
            if (q.x == 0.0 && q.y == 0.0 && q.z == 0.0 && q.w > 0.0) return;
            if (space.field() == Field::Real) {
                for (auto& e : v.c) e = e * -1.0;
                return;
            }
            double n = std::sqrt(n2);
            Quat beta = q.conj() / n;
            for (auto& e : v.c) e = e * beta;
            // The pivot is exactly |q| by construction; writing it as such
            // clears the roundoff that multiplication leaves behind.
            v.c[s] = Quat(n, 0.0, 0.0, 0.0);
            return;
        }
    }
    throw std::runtime_error("gauge_fix: vector is numerically zero");
}

}  // namespace detail

/// Point of a model space, held as a unit ambient representative in
/// canonical gauge.
struct PointRep {
    SpaceId space;
    AmbientVec v;

    PointRep() = default;
    PointRep(const SpaceId& s, AmbientVec rep) : space(s), v(std::move(rep)) {
        if (v.field != s.field() || v.slots() != s.ambient_slots())
            throw std::invalid_argument("PointRep: representative does not match space");
        double n = v.norm();
        if (std::abs(n - 1.0) > 1e-6)
            throw std::invalid_argument("PointRep: representative is not a unit vector");
        if (std::abs(n - 1.0) > 1e-13) v = v * (1.0 / n);
        detail::gauge_fix(space, v);
    }

    static PointRep base_point(const SpaceId& s, int index = 0) {
        return PointRep(s, AmbientVec::basis(s.field(), s.ambient_slots(), index));
    }

    bool approx_equal(const PointRep& other, double tol = 1e-10) const {
        if (space != other.space) return false;
        for (std::size_t i = 0; i < v.c.size(); ++i) {
            Quat d = v.c[i] - other.v.c[i];
            if (std::max(std::max(std::abs(d.w), std::abs(d.x)),
                         std::max(std::abs(d.y), std::abs(d.z))) > tol)
                return false;
        }
        return true;
    }
};

/// Tangent vector, stored as a horizontal ambient vector at the canonical
/// representative of its base point.
struct TangentVec {
    PointRep base;
    AmbientVec u;

    double horizontality_residual() const {
        Quat q = dotF(base.v, u);
        return q.norm();
    }
};

inline double clamp_unit(double t) { return std::clamp(t, -1.0, 1.0); }

/// Geodesic distance in the canonical quotient metric (radians).
inline double distance(const PointRep& p, const PointRep& q) {
    if (p.space != q.space) throw std::invalid_argument("distance: space mismatch");
    if (p.space.family == Family::Sphere) return std::acos(clamp_unit(dotR(p.v, q.v)));
    return std::acos(clamp_unit(dotF(p.v, q.v).norm()));
}

/// Unit-speed geodesic through t.base in direction t.u, evaluated at arc
/// length s: [cos(s) v + sin(s) u].
inline PointRep geodesic(const TangentVec& t, double s) {
    if (std::abs(t.u.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("geodesic: direction must be a unit vector");
    return PointRep(t.base.space, t.base.v * std::cos(s) + t.u * std::sin(s));
}

/// Projects w onto the horizontal space at p (the orthogonal complement of
/// the field-span of the representative).
inline AmbientVec horizontal_project(const PointRep& p, const AmbientVec& w) {
    return project_field_orthogonal(p.v, w);
}

/// Deterministic orthonormal horizontal frame of size dim(space).
inline std::vector<AmbientVec> tangent_frame(const PointRep& p) {
    const int dim = p.space.real_dim();
    std::vector<AmbientVec> candidates;
    candidates.reserve(static_cast<std::size_t>(p.v.real_dim()));
    for (int i = 0; i < p.v.real_dim(); ++i) {
        AmbientVec e(p.v.field, p.v.slots());
        e.set_real_coord(i, 1.0);
        candidates.push_back(horizontal_project(p, e));
    }
    auto frame = real_orthonormalize(std::move(candidates));
    if (static_cast<int>(frame.size()) != dim)
        throw std::runtime_error("tangent_frame: degenerate frame construction");
    frame.resize(static_cast<std::size_t>(dim));
    return frame;
}

/// Riemannian log map at y0: the tangent vector t with geodesic(t/|t|, |t|)
/// equal to the target point.  Requires the target to lie strictly inside
/// the cut locus of y0.
inline AmbientVec log_map(const PointRep& y0, const PointRep& target) {
    if (y0.space != target.space) throw std::invalid_argument("log_map: space mismatch");
    AmbientVec w = target.v;
    double cos_theta;
    if (y0.space.family == Family::Sphere) {
        cos_theta = clamp_unit(dotR(y0.v, w));
    } else {
        Quat q = dotF(y0.v, w);
        double qn = q.norm();
        if (qn < 1e-12) throw std::runtime_error("log_map: target at maximal distance");
        w = w.scaled(q.conj() / qn);
        cos_theta = clamp_unit(qn);
    }
    AmbientVec dir = w - y0.v * cos_theta;
    double n = dir.norm();
    if (n < 1e-300) return AmbientVec(y0.v.field, y0.v.slots());
    // atan2 keeps the angle well-conditioned near 0, where acos of the
    // inner product loses half the significant digits.
    double theta = std::atan2(n, cos_theta);
    return dir * (theta / n);
}

// ---------------------------------------------------------------------------
// Twistor fibration plumbing: CP^{2N+1} and HP^N share the ambient real
// vector space via the pairing q = alpha + J beta per quaternionic slot.
// Right multiplication by I on H^{N+1} then matches multiplication by i
// on C^{2N+2}, so the U(1) quotient refines the Sp(1) quotient.
// ---------------------------------------------------------------------------

inline AmbientVec pack_complex_pairs(const AmbientVec& z) {
    if (z.field != Field::Complex || z.slots() % 2 != 0)
        throw std::invalid_argument("pack_complex_pairs: need an even complex vector");
    AmbientVec q(Field::Quaternion, z.slots() / 2);
    for (int a = 0; a < q.slots(); ++a) {
        const Quat& alpha = z.c[static_cast<std::size_t>(2 * a)];
        const Quat& beta = z.c[static_cast<std::size_t>(2 * a + 1)];
        q.c[static_cast<std::size_t>(a)] = Quat(alpha.w, alpha.x, beta.w, -beta.x);
    }
    return q;
}

inline AmbientVec unpack_to_complex_pairs(const AmbientVec& q) {
    if (q.field != Field::Quaternion)
        throw std::invalid_argument("unpack_to_complex_pairs: need a quaternionic vector");
    AmbientVec z(Field::Complex, 2 * q.slots());
    for (int a = 0; a < q.slots(); ++a) {
        const Quat& e = q.c[static_cast<std::size_t>(a)];
        z.c[static_cast<std::size_t>(2 * a)] = Quat::complex(e.w, e.x);
        z.c[static_cast<std::size_t>(2 * a + 1)] = Quat::complex(e.y, -e.z);
    }
    return z;
}

/// A compatible complex structure on T_l HP^N, acting by right
/// multiplication with a unit imaginary quaternion in the gauge
/// representative of l.
struct QuatStructure {
    Quat s;  // unit imaginary

    AmbientVec operator()(const AmbientVec& u) const { return u.scaled(s); }
};

/// The complex structure J_tau induced by a twistor point tau in the fibre
/// over l: writing tau = [x q] for the gauge representative x of l,
/// J_tau acts as right multiplication by q i conj(q).
inline QuatStructure quaternionic_structure(const PointRep& l, const PointRep& tau) {
    if (l.space.family != Family::QuatProj ||
        tau.space.family != Family::ComplexProj ||
        tau.space.param != 2 * l.space.param + 1)
        throw std::invalid_argument("quaternionic_structure: need l in HP^N, tau in CP^{2N+1}");
    AmbientVec t = pack_complex_pairs(tau.v);
    Quat q = dotF(l.v, t);
    if (std::abs(q.norm() - 1.0) > 1e-8) throw std::invalid_argument("tau is not in the fibre of l");
    q = normalized(q);
    AmbientVec residual = t - l.v.scaled(q);
    if (residual.norm() > 1e-8) throw std::invalid_argument("tau is not in the fibre of l");
    return QuatStructure{q * Quat::i() * q.conj()};
}

}  // namespace rank1
