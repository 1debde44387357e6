#pragma once

#include <cmath>
#include <cstdlib>

namespace rank1 {

/// Quaternion with real components (w + x*i + y*j + z*k).
/// Scalars act on ambient vectors by right multiplication; the ambient
/// H^{N+1} is treated as a right H-module throughout.
struct Quat {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quat() = default;
    constexpr Quat(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quat one() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quat i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quat j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quat k() { return {0.0, 0.0, 0.0, 1.0}; }
    static constexpr Quat complex(double re, double im) { return {re, im, 0.0, 0.0}; }

    friend constexpr Quat operator+(const Quat& a, const Quat& b) {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr Quat operator-(const Quat& a, const Quat& b) {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
    friend constexpr Quat operator*(const Quat& a, double s) {
        return {a.w * s, a.x * s, a.y * s, a.z * s};
    }
    friend constexpr Quat operator*(double s, const Quat& a) { return a * s; }
    friend constexpr Quat operator/(const Quat& a, double s) { return a * (1.0 / s); }

    friend constexpr Quat operator*(const Quat& a, const Quat& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }

    constexpr Quat conj() const { return {w, -x, -y, -z}; }
    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    Quat inv() const { return conj() / norm2(); }

    constexpr bool is_identity() const { return w == 1.0 && x == 0.0 && y == 0.0 && z == 0.0; }

    /// Real part of conj(a)*b, i.e. the Euclidean inner product on R^4.
    friend constexpr double dotR(const Quat& a, const Quat& b) {
        return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
    }
};

inline Quat normalized(const Quat& q) { return q / q.norm(); }

}  // namespace rank1
