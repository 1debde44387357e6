#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rank1/constants.hpp"

namespace rank1 {

enum class TheoremId { Rpn, Cpn, Hpn };

/// Lower-bound query for one of the three energy theorems.  The class
/// invariant is the homotopy-class datum (L*, A* or B*): the infimal
/// geodesic length, sphere area or 4-current mass in the image class.  It
/// is supplied by the caller or taken from the model catalog; the toolkit
/// never computes it for general targets.
struct BoundQuery {
    TheoremId theorem;
    int dimension;  // n or N
    double p;
    double class_invariant;
    std::optional<ExactConstant> class_invariant_exact;
    Mode mode = Mode::Derived;

    static BoundQuery rpn(int n, double p, const ExactConstant& l_star, Mode mode) {
        return {TheoremId::Rpn, n, p, l_star.to_double(), l_star, mode};
    }
    static BoundQuery cpn(int n, double p, const ExactConstant& a_star, Mode mode) {
        return {TheoremId::Cpn, n, p, a_star.to_double(), a_star, mode};
    }
    static BoundQuery hpn(int n, double p, const ExactConstant& b_star, Mode mode) {
        return {TheoremId::Hpn, n, p, b_star.to_double(), b_star, mode};
    }
};

struct BoundResult {
    double value = 0.0;
    std::optional<ExactConstant> exact;
    Mode mode = Mode::Derived;
    bool strict = false;  // the quaternionic bound is strict for non-constant maps
    std::vector<std::string> equality_witnesses;
};

namespace detail {

inline bool near_integer(double x, long& out) {
    out = std::lround(x);
    return std::abs(x - static_cast<double>(out)) < 1e-12;
}

inline BigRat rat_int_pow(const BigRat& base, long e) {
    BigRat r = 1;
    for (long i = 0; i < e; ++i) r *= base;
    return r;
}

/// (c * pi^j)^e as an exact constant, for a single-term input.
inline std::optional<ExactConstant> single_term_pow(const ExactConstant& c, long e) {
    if (!c.is_single_term()) return std::nullopt;
    const auto& [k, a] = *c.terms().begin();
    return ExactConstant(rat_int_pow(a, e), static_cast<int>(k * e));
}

}  // namespace detail

/// Real projective theorem: E_p(F) >= (sigma(n)/2) (c sqrt(n) L* / pi)^p.
/// The transcribed statement has c = 2; the proof chain assembled from
/// Vol(G) = sigma(n) sigma(n-1) / (2 pi) forces c = 1, which is also the
/// value attained by the identity and the one compatible with Pu's
/// inequality.  Derived mode uses c = 1.
inline BoundResult bound_rpn(const BoundQuery& q) {
    if (q.theorem != TheoremId::Rpn) throw std::invalid_argument("bound_rpn: wrong theorem id");
    if (q.dimension < 2 || q.p < 1.0)
        throw std::invalid_argument("bound_rpn: need n >= 2 and p >= 1");
    const int n = q.dimension;
    const double c = q.mode == Mode::Printed ? 2.0 : 1.0;
    constexpr double kPi = 3.14159265358979323846;
    BoundResult r;
    r.mode = q.mode;
    r.value = sphere_volume(n).to_double() / 2.0 *
              std::pow(c * std::sqrt(static_cast<double>(n)) * q.class_invariant / kPi,
                       static_cast<double>(q.p));
    long pi_int = 0;
    if (q.class_invariant_exact && detail::near_integer(q.p, pi_int) && pi_int % 2 == 0) {
        auto l_pow = detail::single_term_pow(*q.class_invariant_exact, pi_int);
        if (l_pow) {
            BigRat coeff = detail::rat_int_pow(BigRat(static_cast<long>(c) * static_cast<long>(c) * n),
                                               pi_int / 2);
            r.exact = sphere_volume(n) * BigRat(1, 2) * ExactConstant(coeff, -static_cast<int>(pi_int)) *
                      *l_pow;
        }
    }
    if (q.mode == Mode::Derived)
        r.equality_witnesses = {"identity", "isometries onto totally geodesic images"};
    return r;
}

/// Complex projective theorem: E_p(F) >= (pi^N / N!) (2N A* / pi)^{p/2}.
/// The transcribed constant and the proof chain agree, so printed and
/// derived modes coincide.
inline BoundResult bound_cpn(const BoundQuery& q) {
    if (q.theorem != TheoremId::Cpn) throw std::invalid_argument("bound_cpn: wrong theorem id");
    if (q.dimension < 1 || q.p < 2.0)
        throw std::invalid_argument("bound_cpn: need N >= 1 and p >= 2");
    const int n = q.dimension;
    constexpr double kPi = 3.14159265358979323846;
    BoundResult r;
    r.mode = q.mode;
    r.value = space_volume(SpaceId::complex_proj(n)).to_double() *
              std::pow(2.0 * n * q.class_invariant / kPi, q.p / 2.0);
    long half_p = 0;
    if (q.class_invariant_exact && detail::near_integer(q.p / 2.0, half_p)) {
        auto a_pow = detail::single_term_pow(*q.class_invariant_exact, half_p);
        if (a_pow) {
            BigRat coeff = detail::rat_int_pow(BigRat(2 * n), half_p);
            r.exact = space_volume(SpaceId::complex_proj(n)) *
                      ExactConstant(coeff, -static_cast<int>(half_p)) * *a_pow;
        }
    }
    r.equality_witnesses = q.p == 2.0
                               ? std::vector<std::string>{"identity", "holomorphic maps"}
                               : std::vector<std::string>{"identity", "homotheties"};
    return r;
}

/// Quaternionic theorem: E_p(F) > Vol(HP^N) (K_N B*)^{p/4}, strict for
/// non-constant maps.  K_N comes from the requested constant mode.
inline BoundResult bound_hpn(const BoundQuery& q) {
    if (q.theorem != TheoremId::Hpn) throw std::invalid_argument("bound_hpn: wrong theorem id");
    if (q.dimension < 2 || q.p < 4.0)
        throw std::invalid_argument("bound_hpn: need N >= 2 and p >= 4");
    const int n = q.dimension;
    ExactConstant k = k_constant(n, q.mode);
    BoundResult r;
    r.mode = q.mode;
    r.strict = true;
    r.value = space_volume(SpaceId::quat_proj(n)).to_double() *
              std::pow(k.to_double() * q.class_invariant, q.p / 4.0);
    long quarter_p = 0;
    if (q.class_invariant_exact && detail::near_integer(q.p / 4.0, quarter_p)) {
        ExactConstant kb = k * *q.class_invariant_exact;
        if (quarter_p == 1) {
            r.exact = space_volume(SpaceId::quat_proj(n)) * kb;
        } else {
            auto kb_pow = detail::single_term_pow(kb, quarter_p);
            if (kb_pow) r.exact = space_volume(SpaceId::quat_proj(n)) * *kb_pow;
        }
    }
    return r;
}

inline BoundResult evaluate_bound(const BoundQuery& q) {
    switch (q.theorem) {
        case TheoremId::Rpn: return bound_rpn(q);
        case TheoremId::Cpn: return bound_cpn(q);
        case TheoremId::Hpn: return bound_hpn(q);
    }
    throw std::logic_error("evaluate_bound: bad theorem id");
}

/// Model-catalog class invariants for degree-1 self-maps: the closed
/// geodesic length pi, the line area pi, the quaternionic line volume
/// pi^2/6.
inline ExactConstant catalog_class_invariant(TheoremId theorem) {
    switch (theorem) {
        case TheoremId::Rpn: return ExactConstant::pi();
        case TheoremId::Cpn: return ExactConstant::pi();
        case TheoremId::Hpn: return ExactConstant::rational(1, 6, 2);
    }
    throw std::logic_error("catalog_class_invariant: bad theorem id");
}

}  // namespace rank1
