#pragma once

#include <vector>

#include "rank1/constants.hpp"
#include "rank1/maps.hpp"

namespace rank1 {

/// Totally geodesic submanifold of a model space, carried as an isometric
/// parametrization from a reference model space: projective lines of CP^N,
/// quaternionic lines of HP^N, totally geodesic CP^2's of HP^N, and twistor
/// fibres inside CP^{2N+1}.  Masses of image currents are integrals over
/// the reference space through the parametrization.
struct SubmanifoldHandle {
    enum class Kind { Line, QuatLine, Cp2InHpn, TwistorFiber };

    Kind kind;
    SpaceId ambient;
    std::vector<AmbientVec> basis;  // field-orthonormal spanning set in the ambient module

    SpaceId ref_space() const {
        switch (kind) {
            case Kind::Line: return SpaceId::complex_proj(1);
            case Kind::QuatLine: return SpaceId::quat_proj(1);
            case Kind::Cp2InHpn: return SpaceId::complex_proj(2);
            case Kind::TwistorFiber: return SpaceId::complex_proj(1);
        }
        throw std::logic_error("ref_space: bad kind");
    }

    ExactConstant volume() const { return space_volume(ref_space()); }

    /// Isometric parametrization ref_space -> ambient.
    MapDescriptor parametrization() const {
        switch (kind) {
            case Kind::Line:
            case Kind::QuatLine:
            case Kind::TwistorFiber:
                return MapDescriptor::linear_embedding(ref_space(), ambient, basis);
            case Kind::Cp2InHpn: {
                // Lift of the complex 3-space W through CP^{2N+1}, then the
                // twistor projection; W is totally complex so this lands
                // isometrically on the totally geodesic CP^2.
                int n = ambient.param;
                std::vector<AmbientVec> complex_basis;
                complex_basis.reserve(3);
                for (const auto& w : basis) complex_basis.push_back(unpack_to_complex_pairs(w));
                auto lift = MapDescriptor::linear_embedding(
                    SpaceId::complex_proj(2), SpaceId::complex_proj(2 * n + 1), complex_basis);
                return MapDescriptor::compose({lift, MapDescriptor::twistor_projection(n)});
            }
        }
        throw std::logic_error("parametrization: bad kind");
    }

    PointRep point_from_ref(const PointRep& r) const { return apply(parametrization(), r); }

    /// Oriented orthonormal tangent frame of the submanifold at one of its
    /// points, in the orientation calibrated by the relevant form (complex
    /// orientation for lines and CP^2's, quaternionic for HP^1's).
    std::vector<AmbientVec> oriented_frame(const PointRep& at) const;
};

namespace detail {

inline AmbientVec project_onto_field_span(const std::vector<AmbientVec>& basis,
                                          const AmbientVec& u) {
    AmbientVec p(u.field, u.slots());
    for (const auto& b : basis) p = p + b.scaled(dotF(b, u));
    return p;
}

/// First basis direction orthogonal (over the field) to the point rep
/// inside the span; the tangent line/quaternionic-line generator.
inline AmbientVec span_tangent_generator(const std::vector<AmbientVec>& basis,
                                         const AmbientVec& y) {
    for (const auto& b : basis) {
        AmbientVec w = project_field_orthogonal(y, b);
        double n = w.norm();
        if (n > 1e-6) return w * (1.0 / n);
    }
    throw std::runtime_error("span_tangent_generator: degenerate span");
}

}  // namespace detail

inline std::vector<AmbientVec> SubmanifoldHandle::oriented_frame(const PointRep& at) const {
    if (at.space != ambient) throw std::invalid_argument("oriented_frame: wrong ambient space");
    const AmbientVec& y = at.v;
    switch (kind) {
        case Kind::Line: {
            AmbientVec w = detail::span_tangent_generator(basis, y);
            return {w, w.scaled(Quat::i())};
        }
        case Kind::QuatLine: {
            AmbientVec w = detail::span_tangent_generator(basis, y);
            // (u, J_I u, J_J u, J_K u) with the operator triple J_A = R_{conj(A)}:
            // the orientation on which the Kraines calibration is +1.
            return {w, w.scaled(Quat::i().conj()), w.scaled(Quat::j().conj()),
                    w.scaled(Quat::k().conj())};
        }
        case Kind::Cp2InHpn: {
            // Recover the fibre line W cap (y H): project y onto W over C;
            // if y's quaternionic phase is J-aligned the projection can
            // vanish, so retry with the J-rotated representative.
            AmbientVec w0 = detail::project_onto_field_span(basis, y);
            if (w0.norm() < 0.5) w0 = detail::project_onto_field_span(basis, y.scaled(-Quat::j()));
            if (w0.norm() < 1e-6) throw std::runtime_error("oriented_frame: point not on CP^2 handle");
            w0 = w0.normalized();
            std::vector<AmbientVec> gs = {w0};
            for (const auto& b : basis) gs.push_back(b);
            auto onb = field_orthonormalize(std::move(gs));
            if (onb.size() != 3) throw std::runtime_error("oriented_frame: degenerate CP^2 handle");
            Quat transport = dotF(w0, y);  // y = w0 * transport, |transport| = 1
            AmbientVec v1 = onb[1], v2 = onb[2];
            return {v1.scaled(transport), v1.scaled(Quat::i() * transport),
                    v2.scaled(transport), v2.scaled(Quat::i() * transport)};
        }
        case Kind::TwistorFiber: {
            AmbientVec q = pack_complex_pairs(y);
            return {unpack_to_complex_pairs(q.scaled(Quat::j())),
                    unpack_to_complex_pairs(q.scaled(Quat::k()))};
        }
    }
    throw std::logic_error("oriented_frame: bad kind");
}

/// Projective line of CP^N through x in direction u.
inline SubmanifoldHandle line_through(const PointRep& x, const AmbientVec& u) {
    if (x.space.family != Family::ComplexProj)
        throw std::invalid_argument("line_through: need a point of CP^N");
    return SubmanifoldHandle{SubmanifoldHandle::Kind::Line, x.space, {x.v, u.normalized()}};
}

/// Quaternionic line of HP^N through x in direction u.
inline SubmanifoldHandle hline_through(const PointRep& x, const AmbientVec& u) {
    if (x.space.family != Family::QuatProj)
        throw std::invalid_argument("hline_through: need a point of HP^N");
    return SubmanifoldHandle{SubmanifoldHandle::Kind::QuatLine, x.space, {x.v, u.normalized()}};
}

/// Totally geodesic CP^2 in HP^N: the HP-image of the complex 3-space
/// W = U span_C(e0, e1, e2), for U symplectic-unitary.  W is automatically
/// totally complex (W is orthogonal to W J), which is what makes the image
/// isometric to CP^2 and its tangent planes lie in C_2(tau).
inline SubmanifoldHandle totally_geodesic_cp2(const SpaceId& space, const QMatrix& u) {
    if (space.family != Family::QuatProj || space.param < 2)
        throw std::invalid_argument("totally_geodesic_cp2: need HP^N with N >= 2");
    if (u.field != Field::Quaternion || u.rows != space.ambient_slots() || u.cols != u.rows)
        throw std::invalid_argument("totally_geodesic_cp2: matrix shape mismatch");
    if (u.unitarity_residual() > 1e-10)
        throw std::invalid_argument("totally_geodesic_cp2: matrix is not symplectic");
    std::vector<AmbientVec> basis;
    basis.reserve(3);
    for (int k = 0; k < 3; ++k)
        basis.push_back(u.apply(AmbientVec::basis(Field::Quaternion, u.cols, k)));
    return SubmanifoldHandle{SubmanifoldHandle::Kind::Cp2InHpn, space, std::move(basis)};
}

/// Twistor fibre over l in HP^N, as a projective line of CP^{2N+1} spanned
/// by the complex pair (x, x J) for the gauge representative x of l.
inline SubmanifoldHandle twistor_fiber(const PointRep& l) {
    if (l.space.family != Family::QuatProj)
        throw std::invalid_argument("twistor_fiber: need a point of HP^N");
    SpaceId total = SpaceId::complex_proj(2 * l.space.param + 1);
    return SubmanifoldHandle{SubmanifoldHandle::Kind::TwistorFiber, total,
                             {unpack_to_complex_pairs(l.v),
                              unpack_to_complex_pairs(l.v.scaled(Quat::j()))}};
}

}  // namespace rank1
