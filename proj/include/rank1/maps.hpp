#pragma once

#include <Eigen/Dense>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rank1/points.hpp"

namespace rank1 {

/// Dense matrix over the base field, stored with quaternion entries and
/// acting on ambient vectors from the left (so right scalar multiplication
/// of the module commutes with it).
struct QMatrix {
    Field field = Field::Real;
    int rows = 0, cols = 0;
    std::vector<Quat> a;

    QMatrix() = default;
    QMatrix(Field f, int r, int c) : field(f), rows(r), cols(c), a(static_cast<std::size_t>(r * c)) {}

    static QMatrix identity(Field f, int n) {
        QMatrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Quat::one();
        return m;
    }

    /// Matrix whose k-th column is the given ambient vector.
    static QMatrix from_columns(const std::vector<AmbientVec>& cols) {
        if (cols.empty()) throw std::invalid_argument("QMatrix: no columns");
        QMatrix m(cols[0].field, cols[0].slots(), static_cast<int>(cols.size()));
        for (int c = 0; c < m.cols; ++c)
            for (int r = 0; r < m.rows; ++r) m.at(r, c) = cols[static_cast<std::size_t>(c)].c[static_cast<std::size_t>(r)];
        return m;
    }

    Quat& at(int r, int c) { return a[static_cast<std::size_t>(r * cols + c)]; }
    const Quat& at(int r, int c) const { return a[static_cast<std::size_t>(r * cols + c)]; }

    AmbientVec apply(const AmbientVec& v) const {
        if (v.slots() != cols || v.field != field)
            throw std::invalid_argument("QMatrix::apply: shape or field mismatch");
        AmbientVec w(field, rows);
        for (int r = 0; r < rows; ++r) {
            Quat acc;
            for (int c = 0; c < cols; ++c) acc = acc + at(r, c) * v.c[static_cast<std::size_t>(c)];
            w.c[static_cast<std::size_t>(r)] = acc;
        }
        return w;
    }

    /// Largest deviation of conj-transpose(M) * M from the identity.
    double unitarity_residual() const {
        double worst = 0.0;
        for (int b = 0; b < cols; ++b)
            for (int c = 0; c < cols; ++c) {
                Quat acc;
                for (int r = 0; r < rows; ++r) acc = acc + at(r, b).conj() * at(r, c);
                if (b == c) acc = acc - Quat::one();
                worst = std::max(worst, acc.norm());
            }
        return worst;
    }

    /// Real matrix of the same linear map on the underlying real space.
    Eigen::MatrixXd realified() const {
        int fd = field_real_dim(field);
        Eigen::MatrixXd m(rows * fd, cols * fd);
        AmbientVec e(field, cols);
        for (int c = 0; c < cols * fd; ++c) {
            for (int i = 0; i < cols * fd; ++i) e.set_real_coord(i, i == c ? 1.0 : 0.0);
            AmbientVec w = apply(e);
            for (int r = 0; r < rows * fd; ++r) m(r, c) = w.real_coord(r);
        }
        return m;
    }
};

/// Explicit map family between model spaces.  Each variant has an ambient
/// lift G with G([x]) = [G(x)]; most have analytic Jacobians, and the rest
/// go through the finite-difference path of the differential engine.
struct MapDescriptor {
    enum class Kind {
        Identity,
        AmbientIsometry,
        ProjectiveLinear,
        ConformalDilation,
        PowerMap,
        HopfProjection,
        TwistorProjection,
        LinearEmbedding,
        Composition
    };

    Kind kind = Kind::Identity;
    SpaceId dom, cod;
    QMatrix matrix;                   // AmbientIsometry, ProjectiveLinear
    double lambda = 1.0;              // ConformalDilation
    AmbientVec pole;                  // ConformalDilation
    int degree = 1;                   // PowerMap
    std::vector<AmbientVec> basis;    // LinearEmbedding
    std::vector<MapDescriptor> parts;  // Composition
    double condition_number = 1.0;    // ProjectiveLinear

    const SpaceId& domain() const { return dom; }
    const SpaceId& codomain() const { return cod; }

    static MapDescriptor identity(const SpaceId& s) {
        MapDescriptor f;
        f.kind = Kind::Identity;
        f.dom = f.cod = s;
        return f;
    }

    static MapDescriptor ambient_isometry(const SpaceId& s, QMatrix u) {
        if (u.rows != s.ambient_slots() || u.cols != s.ambient_slots() || u.field != s.field())
            throw std::invalid_argument("ambient_isometry: matrix shape mismatch");
        if (u.unitarity_residual() > 1e-9)
            throw std::invalid_argument("ambient_isometry: matrix is not in the isometry group");
        MapDescriptor f;
        f.kind = Kind::AmbientIsometry;
        f.dom = f.cod = s;
        f.matrix = std::move(u);
        return f;
    }

    static MapDescriptor projective_linear(const SpaceId& s, QMatrix a) {
        if (s.family != Family::RealProj && s.family != Family::ComplexProj)
            throw std::invalid_argument("projective_linear: domain must be RP^n or CP^N");
        if (a.rows != s.ambient_slots() || a.cols != s.ambient_slots() || a.field != s.field())
            throw std::invalid_argument("projective_linear: matrix shape mismatch");
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.realified());
        double smin = svd.singularValues()(svd.singularValues().size() - 1);
        double smax = svd.singularValues()(0);
        if (smin < 1e-12 * smax)
            throw std::invalid_argument("projective_linear: matrix is not invertible");
        MapDescriptor f;
        f.kind = Kind::ProjectiveLinear;
        f.dom = f.cod = s;
        f.matrix = std::move(a);
        f.condition_number = smax / smin;
        return f;
    }

    static MapDescriptor conformal_dilation(int n, double lambda, AmbientVec pole = {}) {
        if (lambda <= 0.0) throw std::invalid_argument("conformal_dilation: lambda must be > 0");
        SpaceId s = SpaceId::sphere(n);
        if (pole.c.empty()) pole = AmbientVec::basis(Field::Real, n + 1, 0);
        if (pole.field != Field::Real || pole.slots() != n + 1 ||
            std::abs(pole.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("conformal_dilation: pole must be a unit ambient vector");
        MapDescriptor f;
        f.kind = Kind::ConformalDilation;
        f.dom = f.cod = s;
        f.lambda = lambda;
        f.pole = std::move(pole);
        return f;
    }

    static MapDescriptor power_map(int d) {
        if (d < 1) throw std::invalid_argument("power_map: degree must be >= 1");
        MapDescriptor f;
        f.kind = Kind::PowerMap;
        f.dom = f.cod = SpaceId::complex_proj(1);
        f.degree = d;
        return f;
    }

    static MapDescriptor hopf_projection(int sphere_dim, Family target) {
        MapDescriptor f;
        f.kind = Kind::HopfProjection;
        f.dom = SpaceId::sphere(sphere_dim);
        if (target == Family::ComplexProj) {
            if (sphere_dim % 2 != 1)
                throw std::invalid_argument("hopf_projection: need S^{2N+1} for CP^N");
            f.cod = SpaceId::complex_proj((sphere_dim - 1) / 2);
        } else if (target == Family::QuatProj) {
            if (sphere_dim % 4 != 3)
                throw std::invalid_argument("hopf_projection: need S^{4N+3} for HP^N");
            f.cod = SpaceId::quat_proj((sphere_dim - 3) / 4);
        } else {
            throw std::invalid_argument("hopf_projection: target must be CP^N or HP^N");
        }
        return f;
    }

    static MapDescriptor twistor_projection(int n) {
        MapDescriptor f;
        f.kind = Kind::TwistorProjection;
        f.dom = SpaceId::complex_proj(2 * n + 1);
        f.cod = SpaceId::quat_proj(n);
        return f;
    }

    /// Inclusion of the subspace spanned (over the base field) by the given
    /// orthonormal vectors of the target's ambient module.
    static MapDescriptor linear_embedding(const SpaceId& source, const SpaceId& target,
                                          std::vector<AmbientVec> subspace_basis) {
        if (source.field() != target.field())
            throw std::invalid_argument("linear_embedding: fields must agree");
        if (static_cast<int>(subspace_basis.size()) != source.ambient_slots())
            throw std::invalid_argument("linear_embedding: need one basis vector per source slot");
        for (std::size_t i = 0; i < subspace_basis.size(); ++i) {
            if (subspace_basis[i].slots() != target.ambient_slots())
                throw std::invalid_argument("linear_embedding: basis vector shape mismatch");
            for (std::size_t j = 0; j <= i; ++j) {
                Quat g = dotF(subspace_basis[j], subspace_basis[i]);
                if (i == j) g = g - Quat::one();
                if (g.norm() > 1e-9)
                    throw std::invalid_argument("linear_embedding: basis is not orthonormal");
            }
        }
        MapDescriptor f;
        f.kind = Kind::LinearEmbedding;
        f.dom = source;
        f.cod = target;
        f.basis = std::move(subspace_basis);
        return f;
    }

    /// Composition, applied left-to-right: compose({F, G}) is x -> G(F(x)).
    static MapDescriptor compose(std::vector<MapDescriptor> maps) {
        if (maps.empty()) throw std::invalid_argument("compose: empty composition");
        for (std::size_t i = 1; i < maps.size(); ++i)
            if (maps[i].domain() != maps[i - 1].codomain())
                throw std::invalid_argument("compose: domain/codomain mismatch at stage " +
                                            std::to_string(i));
        MapDescriptor f;
        f.kind = Kind::Composition;
        f.dom = maps.front().domain();
        f.cod = maps.back().codomain();
        f.parts = std::move(maps);
        return f;
    }

    bool has_analytic_differential() const {
        switch (kind) {
            case Kind::ConformalDilation: return false;
            case Kind::Composition:
                for (const auto& p : parts)
                    if (!p.has_analytic_differential()) return false;
                return true;
            default: return true;
        }
    }

    std::string kind_name() const {
        switch (kind) {
            case Kind::Identity: return "identity";
            case Kind::AmbientIsometry: return "ambient_isometry";
            case Kind::ProjectiveLinear: return "projective_linear";
            case Kind::ConformalDilation: return "conformal_dilation";
            case Kind::PowerMap: return "power_map";
            case Kind::HopfProjection: return "hopf_projection";
            case Kind::TwistorProjection: return "twistor_projection";
            case Kind::LinearEmbedding: return "linear_embedding";
            case Kind::Composition: return "composition";
        }
        return "?";
    }
};

namespace detail {

inline Quat complex_pow(const Quat& z, int d) {
    Quat r = Quat::one();
    for (int i = 0; i < d; ++i) r = r * z;
    return r;
}

inline AmbientVec regroup_sphere_vector(const AmbientVec& v, Field target) {
    int fd = field_real_dim(target);
    AmbientVec w(target, v.slots() / fd);
    for (int i = 0; i < v.slots(); ++i) w.set_real_coord(i, v.c[static_cast<std::size_t>(i)].w);
    return w;
}

/// Ambient lift of a single (non-composite) map variant, evaluated at a
/// unit representative x.  Returns an unnormalized representative of the
/// image point.
inline AmbientVec ambient_value(const MapDescriptor& f, const AmbientVec& x) {
    using Kind = MapDescriptor::Kind;
    switch (f.kind) {
        case Kind::Identity: return x;
        case Kind::AmbientIsometry:
        case Kind::ProjectiveLinear: return f.matrix.apply(x);
        case Kind::ConformalDilation: {
            double t = dotR(x, f.pole);
            AmbientVec w = x - f.pole * t;
            double r = w.norm();
            if (r < 1e-14) return x;  // fixed points at the poles
            double theta = std::atan2(r, t);
            double theta_image = 2.0 * std::atan(f.lambda * std::tan(theta / 2.0));
            return f.pole * std::cos(theta_image) + w * (std::sin(theta_image) / r);
        }
        case Kind::PowerMap: {
            AmbientVec w = x;
            for (auto& q : w.c) q = complex_pow(q, f.degree);
            return w;
        }
        case Kind::HopfProjection: return regroup_sphere_vector(x, f.cod.field());
        case Kind::TwistorProjection: return pack_complex_pairs(x);
        case Kind::LinearEmbedding: {
            AmbientVec w(f.cod.field(), f.cod.ambient_slots());
            for (int k = 0; k < x.slots(); ++k)
                w = w + f.basis[static_cast<std::size_t>(k)].scaled(x.c[static_cast<std::size_t>(k)]);
            return w;
        }
        case Kind::Composition: break;
    }
    throw std::logic_error("ambient_value: composite map");
}

/// Jacobian of the ambient lift at x applied to u (defined for the
/// variants with analytic differentials).
inline AmbientVec ambient_jacobian(const MapDescriptor& f, const AmbientVec& x,
                                   const AmbientVec& u) {
    using Kind = MapDescriptor::Kind;
    switch (f.kind) {
        case Kind::Identity: return u;
        case Kind::AmbientIsometry:
        case Kind::ProjectiveLinear: return f.matrix.apply(u);
        case Kind::PowerMap: {
            AmbientVec w = u;
            for (std::size_t a = 0; a < w.c.size(); ++a)
                w.c[a] = static_cast<double>(f.degree) *
                         (complex_pow(x.c[a], f.degree - 1) * u.c[a]);
            return w;
        }
        case Kind::HopfProjection: return regroup_sphere_vector(u, f.cod.field());
        case Kind::TwistorProjection: return pack_complex_pairs(u);
        case Kind::LinearEmbedding: {
            AmbientVec w(f.cod.field(), f.cod.ambient_slots());
            for (int k = 0; k < u.slots(); ++k)
                w = w + f.basis[static_cast<std::size_t>(k)].scaled(u.c[static_cast<std::size_t>(k)]);
            return w;
        }
        case Kind::ConformalDilation:
        case Kind::Composition: break;
    }
    throw std::logic_error("ambient_jacobian: no analytic lift for " + f.kind_name());
}

}  // namespace detail

/// Applies the map, returning the image point in canonical gauge.
inline PointRep apply(const MapDescriptor& f, const PointRep& p) {
    if (p.space != f.domain()) throw std::invalid_argument("apply: point not in map domain");
    if (f.kind == MapDescriptor::Kind::Composition) {
        PointRep q = p;
        for (const auto& part : f.parts) q = apply(part, q);
        return q;
    }
    AmbientVec w = detail::ambient_value(f, p.v);
    double n = w.norm();
    if (n < 1e-9)
        throw std::runtime_error("apply: image representative degenerates (map singular at point)");
    return PointRep(f.codomain(), w * (1.0 / n));
}

}  // namespace rank1
