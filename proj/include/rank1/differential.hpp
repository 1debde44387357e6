#pragma once

#include <Eigen/Dense>

#include <vector>

#include "rank1/maps.hpp"

namespace rank1 {

/// Matrix of dF at a point with respect to orthonormal tangent frames, with
/// its singular values.  |dF_x|^2 is the squared Frobenius norm and
/// det(dF restricted to the domain) is the product of singular values.
struct DifferentialMatrix {
    Eigen::MatrixXd entries;           // rows = dim(codomain), cols = dim(domain)
    Eigen::VectorXd singular_values;   // descending

    double frobenius2() const { return entries.squaredNorm(); }

    double det_product() const {
        if (entries.cols() > entries.rows())
            throw std::invalid_argument("det_product: needs cols <= rows");
        double d = 1.0;
        for (Eigen::Index i = 0; i < singular_values.size(); ++i) d *= singular_values(i);
        return d;
    }
};

/// Singular values of the frame matrix, one per domain direction
/// (padded with zeros when the codomain has smaller dimension).
inline Eigen::VectorXd compute_singular_values(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    Eigen::VectorXd sv = Eigen::VectorXd::Zero(m.cols());
    sv.head(svd.singularValues().size()) = svd.singularValues();
    return sv;
}

namespace detail {

constexpr double kFdStep = 1e-5;

/// Unit field scalar carrying tangent vectors from the representative y
/// (assumed unit) to the gauge representative y_g = y * w.
inline Quat gauge_transport(const AmbientVec& y, const PointRep& gauged) {
    return dotF(y, gauged.v);
}

inline AmbientVec push_tangent_analytic(const MapDescriptor& f, const PointRep& p,
                                        const AmbientVec& u, const PointRep& image) {
    AmbientVec gx = ambient_value(f, p.v);
    double n = gx.norm();
    if (n < 1e-9) throw std::runtime_error("differential: map singular at evaluation point");
    AmbientVec y = gx * (1.0 / n);
    AmbientVec v = ambient_jacobian(f, p.v, u) * (1.0 / n);
    v = project_field_orthogonal(y, v);
    // y and image.v represent the same point; transport to the gauge rep.
    return v.scaled(gauge_transport(y, image));
}

/// Central differences of log-map coordinates on the gauge-fixed quotient,
/// with one Richardson level.  Handles non-unit u by rescaling.
inline AmbientVec push_tangent_fd(const MapDescriptor& f, const PointRep& p,
                                  const AmbientVec& u, const PointRep& image) {
    double un = u.norm();
    if (un < 1e-13) return AmbientVec(f.codomain().field(), f.codomain().ambient_slots());
    AmbientVec dir = u * (1.0 / un);
    auto central = [&](double h) {
        PointRep plus = apply(f, geodesic(TangentVec{p, dir}, h));
        PointRep minus = apply(f, geodesic(TangentVec{p, dir}, -h));
        return (log_map(image, plus) - log_map(image, minus)) * (1.0 / (2.0 * h));
    };
    AmbientVec coarse = central(kFdStep);
    AmbientVec fine = central(kFdStep / 2.0);
    return (fine * (4.0 / 3.0) - coarse * (1.0 / 3.0)) * un;
}

}  // namespace detail

/// Pushes the unit tangent u at p forward through F, returned as a
/// horizontal ambient vector at the canonical representative of F(p).
/// Analytic where the variant admits it, finite differences otherwise;
/// compositions fold stage by stage.
inline AmbientVec push_tangent(const MapDescriptor& f, const PointRep& p, const AmbientVec& u) {
    if (f.kind == MapDescriptor::Kind::Composition) {
        PointRep q = p;
        AmbientVec v = u;
        for (const auto& part : f.parts) {
            v = push_tangent(part, q, v);
            q = apply(part, q);
        }
        return v;
    }
    PointRep image = apply(f, p);
    if (f.has_analytic_differential())
        return detail::push_tangent_analytic(f, p, u, image);
    return detail::push_tangent_fd(f, p, u, image);
}

/// Forces the finite-difference path (used to cross-check the analytic one).
inline AmbientVec push_tangent_fd(const MapDescriptor& f, const PointRep& p,
                                  const AmbientVec& u) {
    if (f.kind == MapDescriptor::Kind::Composition) {
        PointRep q = p;
        AmbientVec v = u;
        for (const auto& part : f.parts) {
            v = detail::push_tangent_fd(part, q, v, apply(part, q));
            q = apply(part, q);
        }
        return v;
    }
    return detail::push_tangent_fd(f, p, u, apply(f, p));
}

inline DifferentialMatrix differential(const MapDescriptor& f, const PointRep& p,
                                       const std::vector<AmbientVec>& frame_in,
                                       const std::vector<AmbientVec>& frame_out,
                                       bool force_fd = false) {
    DifferentialMatrix d;
    d.entries.resize(static_cast<Eigen::Index>(frame_out.size()),
                     static_cast<Eigen::Index>(frame_in.size()));
    for (std::size_t i = 0; i < frame_in.size(); ++i) {
        AmbientVec v = force_fd ? push_tangent_fd(f, p, frame_in[i])
                                : push_tangent(f, p, frame_in[i]);
        for (std::size_t j = 0; j < frame_out.size(); ++j)
            d.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                dotR(frame_out[j], v);
    }
    d.singular_values = compute_singular_values(d.entries);
    return d;
}

inline DifferentialMatrix differential(const MapDescriptor& f, const PointRep& p,
                                       bool force_fd = false) {
    return differential(f, p, tangent_frame(p), tangent_frame(apply(f, p)), force_fd);
}

/// Product of singular values of a (possibly rectangular) matrix over its
/// column count; the stable form of the Gram-determinant square root.
inline double singular_value_product(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    double prod = m.cols() <= svd.singularValues().size() ? 1.0 : 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        prod *= svd.singularValues()(i);
    return prod;
}

/// |det(dF restricted to the span of the given orthonormal tangent
/// vectors)|, via the singular values of the pushed-forward basis.
inline double det_restriction(const MapDescriptor& f, const PointRep& p,
                              const std::vector<AmbientVec>& subspace_basis) {
    std::vector<AmbientVec> pushed;
    pushed.reserve(subspace_basis.size());
    for (const auto& b : subspace_basis) pushed.push_back(push_tangent(f, p, b));
    Eigen::MatrixXd m(pushed[0].real_dim(), static_cast<Eigen::Index>(pushed.size()));
    for (std::size_t c = 0; c < pushed.size(); ++c)
        for (int r = 0; r < pushed[c].real_dim(); ++r)
            m(r, static_cast<Eigen::Index>(c)) = pushed[c].real_coord(r);
    return singular_value_product(m);
}

}  // namespace rank1
