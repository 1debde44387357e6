#include <catch2/catch_amalgamated.hpp>

#include "rank1/kraines.hpp"

using namespace rank1;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("structure triples satisfy the quaternion relations") {
    Rng rng(30);
    PointRep l = sample_point(SpaceId::quat_proj(2), rng);
    for (int t = 0; t < 10; ++t) {
        FourForm omega = kraines_form(l, sample_unit_quaternion(rng));
        AmbientVec u = sample_unit_direction_at(l, rng);
        auto apply = [&](int a, const AmbientVec& v) { return omega.structure(a, v); };
        // I^2 = J^2 = K^2 = -Id
        for (int a = 0; a < 3; ++a)
            REQUIRE((apply(a, apply(a, u)) + u).norm() <= 1e-10);
        // IJ = K as operators
        REQUIRE((apply(0, apply(1, u)) - apply(2, u)).norm() <= 1e-10);
        // IJK = -Id
        REQUIRE((apply(0, apply(1, apply(2, u))) + u).norm() <= 1e-10);
    }
}

TEST_CASE("Kraines form values on model frames") {
    Rng rng(31);
    for (int n : {2, 3}) {
        PointRep l = sample_point(SpaceId::quat_proj(n), rng);
        for (int t = 0; t < 50; ++t) {
            FourForm omega = kraines_form(l);
            AmbientVec e = sample_unit_direction_at(l, rng);
            // Quaternionic frame (e, I e, J e, K e) in the form's own triple.
            double quat_value = omega(e, omega.structure(0, e), omega.structure(1, e),
                                      omega.structure(2, e));
            REQUIRE(quat_value == Catch::Approx(6.0 / (kPi * kPi)).margin(1e-12));

            // C_2-type unitary frame (e1, I e1, e2, I e2) with e2 orthogonal
            // to the quaternionic line of e1.
            AmbientVec g = horizontal_project(l, gaussian_vec(l.v.field, l.v.slots(), rng));
            g = g - e.scaled(dotF(e, g));
            if (g.norm() < 1e-6) continue;
            g = g.normalized();
            double c2_value = omega(e, omega.structure(0, e), g, omega.structure(0, g));
            REQUIRE(c2_value == Catch::Approx(2.0 / (kPi * kPi)).margin(1e-12));

            // Totally real frames annihilate the form.
            AmbientVec h = horizontal_project(l, gaussian_vec(l.v.field, l.v.slots(), rng));
            h = h - e.scaled(dotF(e, h)) - g.scaled(dotF(g, h));
            if (n >= 3 && h.norm() > 1e-6) {
                h = h.normalized();
                AmbientVec k = horizontal_project(l, gaussian_vec(l.v.field, l.v.slots(), rng));
                k = k - e.scaled(dotF(e, k)) - g.scaled(dotF(g, k)) - h.scaled(dotF(h, k));
                if (k.norm() > 1e-6) {
                    k = k.normalized();
                    REQUIRE(std::abs(omega(e, g, h, k)) <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("Kraines form does not depend on the structure triple") {
    Rng rng(32);
    PointRep l = sample_point(SpaceId::quat_proj(2), rng);
    FourForm standard = kraines_form(l);
    std::vector<AmbientVec> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(sample_unit_direction_at(l, rng));
    double reference = standard(vs[0], vs[1], vs[2], vs[3]);
    for (int t = 0; t < 10; ++t) {
        FourForm rotated = kraines_form(l, sample_unit_quaternion(rng));
        REQUIRE(rotated(vs[0], vs[1], vs[2], vs[3]) ==
                Catch::Approx(reference).margin(1e-12));
    }
}

TEST_CASE("Kraines form is alternating and multilinear (spot checks)") {
    Rng rng(33);
    PointRep l = sample_point(SpaceId::quat_proj(2), rng);
    FourForm omega = kraines_form(l);
    AmbientVec a = sample_unit_direction_at(l, rng);
    AmbientVec b = sample_unit_direction_at(l, rng);
    AmbientVec c = sample_unit_direction_at(l, rng);
    AmbientVec d = sample_unit_direction_at(l, rng);
    REQUIRE(omega(a, b, c, d) == Catch::Approx(-omega(b, a, c, d)).margin(1e-13));
    REQUIRE(omega(a, b, c, d) == Catch::Approx(-omega(a, b, d, c)).margin(1e-13));
    REQUIRE(omega(a, a, c, d) == Catch::Approx(0.0).margin(1e-13));
    double left = omega(a + b * 2.0, b, c, d);
    REQUIRE(left == Catch::Approx(omega(a, b, c, d)).margin(1e-12));
    double scaled = omega(a * 3.0, b, c, d);
    REQUIRE(scaled == Catch::Approx(3.0 * omega(a, b, c, d)).margin(1e-12));
}

TEST_CASE("comass estimates") {
    Rng rng(34);
    PointRep l = sample_point(SpaceId::quat_proj(2), rng);
    FourForm calibration = kraines_form(l).scaled(kPi * kPi / 6.0);
    double comass = comass_estimate(calibration, 24, 300, 7);
    REQUIRE(comass >= 1.0 - 1e-3);
    REQUIRE(comass <= 1.0 + 1e-6);

    // The Kahler form has comass 1 (Wirtinger).
    PointRep x = sample_point(SpaceId::complex_proj(2), rng);
    double kahler_comass = comass_estimate(kahler_form(x), 16, 200, 8);
    REQUIRE(kahler_comass == Catch::Approx(1.0).margin(1e-6));

    // The zero form has comass 0.
    REQUIRE(comass_estimate(kraines_form(l).scaled(0.0), 4, 50, 9) == 0.0);
}

TEST_CASE("calibration pairings") {
    SamplerSpec spec{35, 3000};
    Rng rng(35);

    SubmanifoldHandle hline = sample_hline(2, rng);
    Estimate q = calibration_pairing_kraines(hline, spec);
    REQUIRE(within_se(q.mean, 1.0, q.std_error));

    SubmanifoldHandle x = sample_cp2_space(2, rng);
    Estimate c = calibration_pairing_kraines(x, spec);
    REQUIRE(within_se(c.mean, 1.0, c.std_error));

    SubmanifoldHandle line = sample_line(2, rng);
    Estimate w = calibration_pairing_kahler(line, spec);
    REQUIRE(within_se(w.mean, kPi, w.std_error));
}
