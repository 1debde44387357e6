#pragma once

#include <array>
#include <functional>
#include <vector>

#include "rank1/functionals.hpp"

namespace rank1 {

/// The fundamental (Kraines) 4-form at a point of HP^N, represented by a
/// local quaternionic triple of complex structures.  The structures act by
/// right multiplication with the conjugated quaternions, which is what
/// makes them satisfy I^2 = J^2 = K^2 = IJK = -Id as operators on a right
/// module.  The form (1/pi^2)(w_I^2 + w_J^2 + w_K^2) does not depend on
/// the choice of triple.
struct FourForm {
    PointRep base;
    std::array<Quat, 3> triple = {Quat::i(), Quat::j(), Quat::k()};
    double coefficient = 1.0;  // overall scale against (1/pi^2) * sum of squares

    AmbientVec structure(int which, const AmbientVec& u) const {
        return u.scaled(triple[static_cast<std::size_t>(which)].conj());
    }

    double two_form(int which, const AmbientVec& u, const AmbientVec& v) const {
        return dotR(structure(which, u), v);
    }

    double operator()(const AmbientVec& v1, const AmbientVec& v2, const AmbientVec& v3,
                      const AmbientVec& v4) const {
        constexpr double kPi = 3.14159265358979323846;
        double acc = 0.0;
        for (int a = 0; a < 3; ++a) {
            double w12 = two_form(a, v1, v2), w34 = two_form(a, v3, v4);
            double w13 = two_form(a, v1, v3), w24 = two_form(a, v2, v4);
            double w14 = two_form(a, v1, v4), w23 = two_form(a, v2, v3);
            acc += 2.0 * (w12 * w34 - w13 * w24 + w14 * w23);
        }
        return coefficient * acc / (kPi * kPi);
    }

    FourForm scaled(double factor) const {
        FourForm f = *this;
        f.coefficient *= factor;
        return f;
    }
};

/// Kraines form at l, from the standard triple or a conjugated one.
inline FourForm kraines_form(const PointRep& l, const Quat& rotation = Quat::one()) {
    if (l.space.family != Family::QuatProj)
        throw std::invalid_argument("kraines_form: need a point of HP^N");
    FourForm f;
    f.base = l;
    Quat q = normalized(rotation);
    f.triple = {q * Quat::i() * q.conj(), q * Quat::j() * q.conj(), q * Quat::k() * q.conj()};
    return f;
}

inline double evaluate(const FourForm& form, const AmbientVec& v1, const AmbientVec& v2,
                       const AmbientVec& v3, const AmbientVec& v4) {
    return form(v1, v2, v3, v4);
}

/// Kahler 2-form of CP^N at a point: w(u, v) = <u i, v>.
struct KahlerForm {
    PointRep base;

    double operator()(const AmbientVec& u, const AmbientVec& v) const {
        return dotR(u.scaled(Quat::i()), v);
    }
};

inline KahlerForm kahler_form(const PointRep& x) {
    if (x.space.family != Family::ComplexProj)
        throw std::invalid_argument("kahler_form: need a point of CP^N");
    return KahlerForm{x};
}

namespace detail {

/// Multilinear alternating forms have exact per-slot gradients: the
/// gradient in slot a is the covector of the form with the other slots
/// frozen.
template <typename FormEval>
void form_gradient(const FormEval& form, const std::vector<AmbientVec>& frame_basis,
                   std::vector<std::vector<double>>& vectors,
                   std::vector<std::vector<double>>& grad,
                   std::vector<AmbientVec>& scratch) {
    const std::size_t k = vectors.size();
    const std::size_t d = frame_basis.size();
    auto to_ambient = [&](const std::vector<double>& coords) {
        AmbientVec v(frame_basis[0].field, frame_basis[0].slots());
        for (std::size_t j = 0; j < d; ++j) v = v + frame_basis[j] * coords[j];
        return v;
    };
    scratch.clear();
    for (const auto& coords : vectors) scratch.push_back(to_ambient(coords));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<AmbientVec> probe = scratch;
            probe[a] = frame_basis[j];
            grad[a][j] = form(probe);
        }
    }
}

template <typename FormEval>
double form_value(const FormEval& form, const std::vector<AmbientVec>& frame_basis,
                  const std::vector<std::vector<double>>& vectors) {
    std::vector<AmbientVec> vs;
    vs.reserve(vectors.size());
    for (const auto& coords : vectors) {
        AmbientVec v(frame_basis[0].field, frame_basis[0].slots());
        for (std::size_t j = 0; j < frame_basis.size(); ++j) v = v + frame_basis[j] * coords[j];
        vs.push_back(v);
    }
    return form(vs);
}

inline void orthonormalize_rows(std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < rows[i].size(); ++c) dot += rows[i][c] * rows[j][c];
            for (std::size_t c = 0; c < rows[i].size(); ++c) rows[i][c] -= dot * rows[j][c];
        }
        double n = 0.0;
        for (double c : rows[i]) n += c * c;
        n = std::sqrt(n);
        for (double& c : rows[i]) c /= n;
    }
}

}  // namespace detail

/// Comass lower bound by multi-start projected ascent over orthonormal
/// k-frames of the tangent space at the form's base point.  Returned as an
/// estimate (best frame value found), never as a proof.
template <typename FormEvalVec>
double comass_estimate_impl(const FormEvalVec& form, const PointRep& base, int arity,
                            int restarts, int iterations, Rng& rng) {
    auto frame_basis = tangent_frame(base);
    const std::size_t d = frame_basis.size();
    const std::size_t k = static_cast<std::size_t>(arity);
    double best = 0.0;
    std::vector<std::vector<double>> q(k, std::vector<double>(d));
    std::vector<std::vector<double>> grad(k, std::vector<double>(d));
    std::vector<AmbientVec> scratch;
    for (int r = 0; r < restarts; ++r) {
        for (auto& row : q)
            for (double& c : row) c = rng.gaussian();
        detail::orthonormalize_rows(q);
        double value = detail::form_value(form, frame_basis, q);
        double step = 0.25;
        for (int it = 0; it < iterations; ++it) {
            detail::form_gradient(form, frame_basis, q, grad, scratch);
            std::vector<std::vector<double>> trial = q;
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t j = 0; j < d; ++j) trial[a][j] += step * grad[a][j];
            detail::orthonormalize_rows(trial);
            double trial_value = detail::form_value(form, frame_basis, trial);
            if (trial_value > value) {
                q = std::move(trial);
                value = trial_value;
                step = std::min(step * 1.25, 2.0);
            } else {
                step *= 0.5;
                if (step < 1e-14) break;
            }
        }
        best = std::max(best, value);
    }
    return best;
}

inline double comass_estimate(const FourForm& form, int restarts = 64, int iterations = 500,
                              std::uint64_t seed = 42) {
    Rng rng(seed);
    auto eval = [&](const std::vector<AmbientVec>& v) { return form(v[0], v[1], v[2], v[3]); };
    return comass_estimate_impl(eval, form.base, 4, restarts, iterations, rng);
}

inline double comass_estimate(const KahlerForm& form, int restarts = 64, int iterations = 500,
                              std::uint64_t seed = 42) {
    Rng rng(seed);
    auto eval = [&](const std::vector<AmbientVec>& v) { return form(v[0], v[1]); };
    return comass_estimate_impl(eval, form.base, 2, restarts, iterations, rng);
}

/// Pairing of a parallel form with a compact calibrated submanifold:
/// the Monte-Carlo average of the form on oriented tangent frames times
/// the submanifold volume.  The form is rebuilt at each sample point.
inline Estimate calibration_pairing_kraines(const SubmanifoldHandle& handle,
                                            const SamplerSpec& spec, double form_scale = 1.0) {
    if (handle.ambient.family != Family::QuatProj)
        throw std::invalid_argument("calibration_pairing: quaternionic handle required");
    const SpaceId ref = handle.ref_space();
    Estimate avg = mc_estimate(spec, [&](Rng& rng) {
        PointRep at = handle.point_from_ref(sample_point(ref, rng));
        auto frame = handle.oriented_frame(at);
        FourForm omega = kraines_form(at);
        return form_scale * omega(frame[0], frame[1], frame[2], frame[3]);
    });
    return avg.scaled(handle.volume().to_double());
}

/// Kahler pairing <w, S> for a complex-line handle of CP^N.
inline Estimate calibration_pairing_kahler(const SubmanifoldHandle& handle,
                                           const SamplerSpec& spec) {
    if (handle.kind != SubmanifoldHandle::Kind::Line &&
        handle.kind != SubmanifoldHandle::Kind::TwistorFiber)
        throw std::invalid_argument("calibration_pairing_kahler: need a complex line handle");
    const SpaceId ref = handle.ref_space();
    Estimate avg = mc_estimate(spec, [&](Rng& rng) {
        PointRep at = handle.point_from_ref(sample_point(ref, rng));
        auto frame = handle.oriented_frame(at);
        return kahler_form(at)(frame[0], frame[1]);
    });
    return avg.scaled(handle.volume().to_double());
}

}  // namespace rank1
