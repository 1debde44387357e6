#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rank1/exact_constant.hpp"
#include "rank1/space.hpp"

namespace rank1 {

/// Two bookkeeping conventions for every closed-form constant:
/// Printed  - the constant exactly as typeset in the source material,
///            transcribed as data and never silently corrected.
/// Derived  - the self-consistent value forced by the volume recursions,
///            the disintegration identities and the homothety equality
///            cases.  Corrections live only here.
enum class Mode { Printed, Derived };

inline std::string mode_name(Mode m) { return m == Mode::Printed ? "printed" : "derived"; }

/// sigma(m): volume of the unit m-sphere, as an exact pi-polynomial.
/// Gamma at half-integers is expanded through its recursion, never through
/// a floating Gamma routine.
inline ExactConstant sphere_volume(int m) {
    if (m < 0) throw std::invalid_argument("sphere_volume: m must be >= 0");
    if (m % 2 == 1) {
        int k = (m + 1) / 2;  // sigma(2k-1) = 2 pi^k / (k-1)!
        return ExactConstant(BigRat(2, factorial(k - 1)), k);
    }
    int k = m / 2;  // sigma(2k) = 2 * 4^k * k! * pi^k / (2k)!
    BigInt four_k = BigInt(1) << (2 * k);
    return ExactConstant(BigRat(2 * four_k * factorial(k), factorial(2 * k)), k);
}

/// Volume of the unit ball B^d.
inline ExactConstant ball_volume(int d) {
    if (d < 0) throw std::invalid_argument("ball_volume: d must be >= 0");
    if (d % 2 == 0) {
        int k = d / 2;
        return ExactConstant(BigRat(1, factorial(k)), k);
    }
    int k = (d - 1) / 2;  // 2 * k! * 4^k * pi^k / d!
    BigInt four_k = BigInt(1) << (2 * k);
    return ExactConstant(BigRat(2 * factorial(k) * four_k, factorial(d)), k);
}

/// Riemannian volume of a model space in the canonical normalization.
inline ExactConstant space_volume(const SpaceId& s) {
    switch (s.family) {
        case Family::Sphere: return sphere_volume(s.param);
        case Family::RealProj: return sphere_volume(s.param) * BigRat(1, 2);
        case Family::ComplexProj:  // pi^N / N!
            return ExactConstant(BigRat(1, factorial(s.param)), s.param);
        case Family::QuatProj:  // pi^{2N} / (2N+1)!
            return ExactConstant(BigRat(1, factorial(2 * s.param + 1)), 2 * s.param);
    }
    throw std::logic_error("space_volume: bad space");
}

/// F(N): volume of the space of adapted frames of Definition-5.1 type for
/// T_l HP^N.  Computed both by the recursion
///     F(N) = Vol(HP^{N-1}) * F(N-1) * F(1),   F(0) = 1,  F(1) = 4 pi^3,
/// and by the closed form pi^{N(N+2)} 4^N / prod_{j=1}^{N-1} (2j+1)!,
/// asserting that the two agree.
inline ExactConstant frame_space_volume(int n) {
    if (n < 0) throw std::invalid_argument("frame_space_volume: N must be >= 0");
    ExactConstant rec = ExactConstant::one();
    if (n >= 1) {
        const ExactConstant f1 = sphere_volume(3) * sphere_volume(1);
        rec = f1;
        for (int m = 2; m <= n; ++m)
            rec = space_volume(SpaceId::quat_proj(m - 1)) * rec * f1;
    }
    BigInt denom = 1;
    for (int j = 1; j <= n - 1; ++j) denom *= factorial(2 * j + 1);
    ExactConstant closed =
        n == 0 ? ExactConstant::one()
               : ExactConstant(BigRat(BigInt(1) << (2 * n), denom), n * (n + 2));
    if (rec != closed)
        throw std::logic_error("frame_space_volume: recursion and closed form disagree at N=" +
                               std::to_string(n));
    return closed;
}

/// Identifier for the measure spaces carrying the integral-geometric
/// disintegrations: oriented geodesics of RP^n, projective lines of CP^N,
/// quaternionic lines and totally geodesic CP^2's of HP^N, and the fibre
/// family C_2(tau).
struct MeasureSpace {
    enum class Kind { GeodesicsRpn, LinesCpn, HlinesHpn, C2, CplanesHpn };
    Kind kind;
    int param;

    static MeasureSpace geodesics_rpn(int n) { return {Kind::GeodesicsRpn, n}; }
    static MeasureSpace lines_cpn(int n) { return {Kind::LinesCpn, n}; }
    static MeasureSpace hlines_hpn(int n) { return {Kind::HlinesHpn, n}; }
    static MeasureSpace c2(int n) { return {Kind::C2, n}; }
    static MeasureSpace cplanes_hpn(int n) { return {Kind::CplanesHpn, n}; }

    std::string str() const {
        switch (kind) {
            case Kind::GeodesicsRpn: return "geodesics_rpn(" + std::to_string(param) + ")";
            case Kind::LinesCpn: return "lines_cpn(" + std::to_string(param) + ")";
            case Kind::HlinesHpn: return "hlines_hpn(" + std::to_string(param) + ")";
            case Kind::C2: return "c2(" + std::to_string(param) + ")";
            case Kind::CplanesHpn: return "cplanes_hpn(" + std::to_string(param) + ")";
        }
        return "?";
    }
};

/// Total mass of a measure space in the requested mode.  The samplers all
/// use invariant probability measures; these totals are the bookkeeping
/// normalizations applied at the verification layer.
inline ExactConstant measure_space_volume(const MeasureSpace& id, Mode mode) {
    const int n = id.param;
    using Kind = MeasureSpace::Kind;
    switch (id.kind) {
        case Kind::GeodesicsRpn: {
            if (n < 2) throw std::invalid_argument("geodesics_rpn: n must be >= 2");
            // sigma(n) sigma(n-1) / (2 pi), both modes
            return sphere_volume(n) * sphere_volume(n - 1) * ExactConstant(BigRat(1, 2), -1);
        }
        case Kind::LinesCpn: {
            if (n < 1) throw std::invalid_argument("lines_cpn: N must be >= 1");
            // sigma(2N-1) pi^{N-2} / (2 N!), both modes
            return sphere_volume(2 * n - 1) *
                   ExactConstant(BigRat(1, 2 * factorial(n)), n - 2);
        }
        case Kind::HlinesHpn: {
            if (n < 1) throw std::invalid_argument("hlines_hpn: N must be >= 1");
            if (mode == Mode::Printed)  // 6 sigma(4N-1) pi^{2N-1} / (sigma(3) (2N+1)!)
                return sphere_volume(4 * n - 1) * ExactConstant(BigRat(6), 2 * n - 1) *
                       *ExactConstant::one().try_divide(sphere_volume(3) *
                                                        ExactConstant(BigRat(factorial(2 * n + 1))));
            // Vol(U(HP^N)) / Vol(U(HP^1)) = 6 pi^{4N-4} / ((2N+1)! (2N-1)!)
            return ExactConstant(BigRat(6, factorial(2 * n + 1) * factorial(2 * n - 1)),
                                 4 * n - 4);
        }
        case Kind::C2: {
            if (n < 2) throw std::invalid_argument("c2: N must be >= 2");
            if (mode == Mode::Printed)  // (2N-2)! (2N-3)! / (256 pi^{4(N+1)+1})
                return ExactConstant(
                    BigRat(factorial(2 * n - 2) * factorial(2 * n - 3), 256),
                    -(4 * (n + 1) + 1));
            // F(N) / (16 pi^5 F(N-2)) = pi^{4N-5} / ((2N-1)! (2N-3)!)
            return ExactConstant(BigRat(1, factorial(2 * n - 1) * factorial(2 * n - 3)),
                                 4 * n - 5);
        }
        case Kind::CplanesHpn: {
            if (n < 2) throw std::invalid_argument("cplanes_hpn: N must be >= 2");
            if (mode == Mode::Printed)  // (2N-3)! / (256 N (4N^2-1) pi^{2N+6})
                return ExactConstant(
                    BigRat(factorial(2 * n - 3), BigInt(256) * n * (4 * n * n - 1)),
                    -(2 * n + 6));
            // Vol(CP^{2N+1}) Vol(C_2) / Vol(CP^2)
            //   = 2 pi^{6N-6} / ((2N+1)! (2N-1)! (2N-3)!)
            return ExactConstant(
                BigRat(2, factorial(2 * n + 1) * factorial(2 * n - 1) * factorial(2 * n - 3)),
                6 * n - 6);
        }
    }
    throw std::logic_error("measure_space_volume: bad id");
}

/// The quaternionic theorem constant K_N.
///
/// Printed mode evaluates the typeset formula
///   K_N = (32 N^2 (2N+1)! (2N-2)! / pi^{4N-2})
///         * ( 3 sigma(4N-1) pi^{2N-1} / (sigma(3)(2N+1)!)
///           + (N-1)((2N-3)!)^2 / (256 N (2N-1)(4N^2-1) pi^{4(N+1)}) ).
/// Derived mode assembles the proof chain with invariant probability
/// measures, which collapses to
///   K_N = (16 N^2 / (2N-1)) * (1/Vol(HP^1) + 2(N-1)/Vol(CP^2))
///       = 32 N^2 (2N+1) / ((2N-1) pi^2).
inline ExactConstant k_constant(int n, Mode mode) {
    if (n < 2) throw std::invalid_argument("k_constant: N must be >= 2");
    if (mode == Mode::Derived) {
        ExactConstant homothety_factor(BigRat(16 * BigInt(n) * n, 2 * n - 1));
        ExactConstant per_line = *ExactConstant::one().try_divide(
            space_volume(SpaceId::quat_proj(1)));  // 6/pi^2
        ExactConstant per_plane =
            ExactConstant(BigRat(2 * (n - 1))) *
            *ExactConstant::one().try_divide(space_volume(SpaceId::complex_proj(2)));
        return homothety_factor * (per_line + per_plane);
    }
    ExactConstant prefactor(
        BigRat(32 * BigInt(n) * n * factorial(2 * n + 1) * factorial(2 * n - 2)), -(4 * n - 2));
    ExactConstant first = sphere_volume(4 * n - 1) * ExactConstant(BigRat(3), 2 * n - 1) *
                          *ExactConstant::one().try_divide(
                              sphere_volume(3) * ExactConstant(BigRat(factorial(2 * n + 1))));
    BigInt f = factorial(2 * n - 3);
    ExactConstant second(
        BigRat(BigInt(n - 1) * f * f,
               BigInt(256) * n * (2 * n - 1) * (4 * BigInt(n) * n - 1)),
        -4 * (n + 1));
    return prefactor * (first + second);
}

struct ConstantAudit {
    std::string id;
    ExactConstant printed;
    ExactConstant derived;
    std::optional<ExactConstant> ratio;  // derived / printed, when exact
    double ratio_float = 0.0;
    bool consistent = false;

    static ConstantAudit compare(std::string id, const ExactConstant& printed,
                                 const ExactConstant& derived) {
        ConstantAudit a;
        a.id = std::move(id);
        a.printed = printed;
        a.derived = derived;
        a.consistent = (printed - derived).is_zero();
        a.ratio = derived.try_divide(printed);
        a.ratio_float = a.ratio ? a.ratio->to_double() : derived.to_double() / printed.to_double();
        return a;
    }
};

/// Printed-vs-derived audit of every measure-space volume, the frame-volume
/// ratio identities and K_N, for 2 <= N <= n_max.  Discrepancies report
/// both exact values and their exact ratio where it exists.
inline std::vector<ConstantAudit> audit_constants(int n_max) {
    if (n_max < 2) throw std::invalid_argument("audit_constants: N_max must be >= 2");
    std::vector<ConstantAudit> audits;
    auto both = [&](const MeasureSpace& id) {
        audits.push_back(ConstantAudit::compare(id.str(),
                                                measure_space_volume(id, Mode::Printed),
                                                measure_space_volume(id, Mode::Derived)));
    };
    // HP^1 contains exactly one quaternionic line through itself, so the
    // normalized count must be 1; the printed formula gives pi.
    both(MeasureSpace::hlines_hpn(1));
    for (int n = 2; n <= n_max; ++n) {
        // frame-volume ratio F(1)F(N-1)/F(N); printed (2N-1)!/pi^{2N-2}
        ExactConstant printed_56(BigRat(factorial(2 * n - 1)), -(2 * n - 2));
        ExactConstant derived_56 = *(frame_space_volume(1) * frame_space_volume(n - 1))
                                        .try_divide(frame_space_volume(n));
        audits.push_back(ConstantAudit::compare("frame_ratio_one_step(N=" + std::to_string(n) + ")",
                                                printed_56, derived_56));
        // frame-volume ratio F(N-2)/F(N); printed (2N-2)!(2N-3)!/(16 pi^{4N})
        ExactConstant printed_57(BigRat(factorial(2 * n - 2) * factorial(2 * n - 3), 16), -4 * n);
        ExactConstant derived_57 =
            *frame_space_volume(n - 2).try_divide(frame_space_volume(n));
        audits.push_back(ConstantAudit::compare("frame_ratio_two_step(N=" + std::to_string(n) + ")",
                                                printed_57, derived_57));
        both(MeasureSpace::geodesics_rpn(n));
        both(MeasureSpace::lines_cpn(n));
        both(MeasureSpace::hlines_hpn(n));
        both(MeasureSpace::c2(n));
        both(MeasureSpace::cplanes_hpn(n));
        audits.push_back(ConstantAudit::compare("K(" + std::to_string(n) + ")",
                                                k_constant(n, Mode::Printed),
                                                k_constant(n, Mode::Derived)));
    }
    return audits;
}

}  // namespace rank1
