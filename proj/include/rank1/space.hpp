#pragma once

#include <stdexcept>
#include <string>

namespace rank1 {

enum class Family { Sphere, RealProj, ComplexProj, QuatProj };

enum class Field { Real, Complex, Quaternion };

inline int field_real_dim(Field f) {
    switch (f) {
        case Field::Real: return 1;
        case Field::Complex: return 2;
        case Field::Quaternion: return 4;
    }
    return 0;
}

/// One of the model spaces S^n, RP^n, CP^N, HP^N with its canonical metric
/// (constant curvature 1 for the sphere and RP^n, 1 <= K <= 4 for CP^N and
/// HP^N, so that every projective line has diameter pi/2).
struct SpaceId {
    Family family = Family::Sphere;
    int param = 1;  // n or N

    static SpaceId sphere(int n) { return {Family::Sphere, check(n)}; }
    static SpaceId real_proj(int n) { return {Family::RealProj, check(n)}; }
    static SpaceId complex_proj(int n) { return {Family::ComplexProj, check(n)}; }
    static SpaceId quat_proj(int n) { return {Family::QuatProj, check(n)}; }

    Field field() const {
        switch (family) {
            case Family::Sphere:
            case Family::RealProj: return Field::Real;
            case Family::ComplexProj: return Field::Complex;
            case Family::QuatProj: return Field::Quaternion;
        }
        return Field::Real;
    }

    /// Dimension as a real manifold: n | n | 2N | 4N.
    int real_dim() const {
        switch (family) {
            case Family::Sphere:
            case Family::RealProj: return param;
            case Family::ComplexProj: return 2 * param;
            case Family::QuatProj: return 4 * param;
        }
        return 0;
    }

    /// Number of ambient coordinates over the base field.
    int ambient_slots() const { return param + 1; }

    /// Dimension of the ambient real vector space.
    int ambient_real_dim() const { return ambient_slots() * field_real_dim(field()); }

    bool has_gauge() const { return family != Family::Sphere; }

    std::string str() const {
        switch (family) {
            case Family::Sphere: return "S" + std::to_string(param);
            case Family::RealProj: return "RP" + std::to_string(param);
            case Family::ComplexProj: return "CP" + std::to_string(param);
            case Family::QuatProj: return "HP" + std::to_string(param);
        }
        return "?";
    }

    friend bool operator==(const SpaceId& a, const SpaceId& b) {
        return a.family == b.family && a.param == b.param;
    }
    friend bool operator!=(const SpaceId& a, const SpaceId& b) { return !(a == b); }

  private:
    static int check(int n) {
        if (n < 1) throw std::invalid_argument("space dimension parameter must be >= 1");
        return n;
    }
};

}  // namespace rank1
