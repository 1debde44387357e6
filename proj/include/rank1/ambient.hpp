#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rank1/quaternion.hpp"
#include "rank1/rng.hpp"
#include "rank1/space.hpp"

namespace rank1 {

/// Vector in the ambient module F^{slots} for F in {R, C, H}.  Entries are
/// stored as quaternions whose components outside the base field are kept
/// at zero, so the real inner product is always the plain component dot.
struct AmbientVec {
    Field field = Field::Real;
    std::vector<Quat> c;

    AmbientVec() = default;
    AmbientVec(Field f, int slots) : field(f), c(static_cast<std::size_t>(slots)) {}

    static AmbientVec basis(Field f, int slots, int index) {
        AmbientVec v(f, slots);
        v.c[static_cast<std::size_t>(index)] = Quat::one();
        return v;
    }

    int slots() const { return static_cast<int>(c.size()); }
    int real_dim() const { return slots() * field_real_dim(field); }

    /// Real coordinate accessors, indexing slot-major over the field
    /// components actually in use.
    double real_coord(int i) const {
        int fdim = field_real_dim(field);
        const Quat& q = c[static_cast<std::size_t>(i / fdim)];
        switch (i % fdim) {
            case 0: return q.w;
            case 1: return q.x;
            case 2: return q.y;
            default: return q.z;
        }
    }
    void set_real_coord(int i, double value) {
        int fdim = field_real_dim(field);
        Quat& q = c[static_cast<std::size_t>(i / fdim)];
        switch (i % fdim) {
            case 0: q.w = value; break;
            case 1: q.x = value; break;
            case 2: q.y = value; break;
            default: q.z = value; break;
        }
    }

    friend AmbientVec operator+(const AmbientVec& a, const AmbientVec& b) {
        AmbientVec r = a;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
        return r;
    }
    friend AmbientVec operator-(const AmbientVec& a, const AmbientVec& b) {
        AmbientVec r = a;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
        return r;
    }
    friend AmbientVec operator*(const AmbientVec& a, double s) {
        AmbientVec r = a;
        for (auto& q : r.c) q = q * s;
        return r;
    }
    friend AmbientVec operator*(double s, const AmbientVec& a) { return a * s; }

    /// Right scalar multiplication by an element of the base field.
    AmbientVec scaled(const Quat& s) const {
        AmbientVec r = *this;
        for (auto& q : r.c) q = q * s;
        return r;
    }

    double norm2() const {
        double t = 0.0;
        for (const auto& q : c) t += q.norm2();
        return t;
    }
    double norm() const { return std::sqrt(norm2()); }

    AmbientVec normalized() const {
        double n = norm();
        if (n < 1e-300) throw std::runtime_error("cannot normalize zero ambient vector");
        return *this * (1.0 / n);
    }
};

/// Euclidean inner product on the ambient real vector space.
inline double dotR(const AmbientVec& a, const AmbientVec& b) {
    double t = 0.0;
    for (std::size_t i = 0; i < a.c.size(); ++i) t += dotR(a.c[i], b.c[i]);
    return t;
}

/// Field inner product sum conj(a_s) b_s, conjugate-linear in the first
/// argument.  For clean inputs the value lies in the base field.
inline Quat dotF(const AmbientVec& a, const AmbientVec& b) {
    Quat t;
    for (std::size_t i = 0; i < a.c.size(); ++i) t = t + a.c[i].conj() * b.c[i];
    return t;
}

inline AmbientVec gaussian_vec(Field field, int slots, Rng& rng) {
    AmbientVec v(field, slots);
    int fdim = field_real_dim(field);
    for (int i = 0; i < slots * fdim; ++i) v.set_real_coord(i, rng.gaussian());
    return v;
}

/// Removes the component of w lying in the field-span of the unit vector x,
/// i.e. projects onto the orthogonal complement of x*F.
inline AmbientVec project_field_orthogonal(const AmbientVec& x, const AmbientVec& w) {
    return w - x.scaled(dotF(x, w));
}

/// Gram-Schmidt over the base field; drops dependent vectors.
inline std::vector<AmbientVec> field_orthonormalize(std::vector<AmbientVec> vs,
                                                    double tol = 1e-8) {
    std::vector<AmbientVec> out;
    for (auto& v : vs) {
        for (const auto& u : out) v = v - u.scaled(dotF(u, v));
        double n = v.norm();
        if (n > tol) out.push_back(v * (1.0 / n));
    }
    return out;
}

/// Gram-Schmidt over the reals (treating the ambient space as R^d).
inline std::vector<AmbientVec> real_orthonormalize(std::vector<AmbientVec> vs,
                                                   double tol = 1e-8) {
    std::vector<AmbientVec> out;
    for (auto& v : vs) {
        for (const auto& u : out) v = v - u * dotR(u, v);
        double n = v.norm();
        if (n > tol) out.push_back(v * (1.0 / n));
    }
    return out;
}

}  // namespace rank1
