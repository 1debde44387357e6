#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "rank1/sampling.hpp"

using namespace rank1;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool agree_3se(const Estimate& a, double exact) {
    return within_se(a.mean, exact, a.std_error);
}

bool agree_3se(const Estimate& a, const Estimate& b) {
    return within_se(a.mean, b.mean, a.std_error, b.std_error);
}

}  // namespace

TEST_CASE("estimates are deterministic and worker-count independent") {
    SamplerSpec one{1234, 20000, 512, 1};
    SamplerSpec four{1234, 20000, 512, 4};
    auto f = [](Rng& rng) {
        double x = rng.gaussian();
        return x * x;
    };
    Estimate a = mc_estimate(one, f);
    Estimate b = mc_estimate(four, f);
    REQUIRE(a.mean == b.mean);  // bit identical
    REQUIRE(a.std_error == b.std_error);
    REQUIRE(a.samples == b.samples);
    REQUIRE(agree_3se(a, 1.0));

    Estimate again = mc_estimate(one, f);
    REQUIRE(a.mean == again.mean);
}

TEST_CASE("non-finite integrands are reported with provenance") {
    SamplerSpec spec{7, 100, 16, 1};
    REQUIRE_THROWS_WITH(mc_estimate(spec, [](Rng&) { return std::nan(""); }),
                        Catch::Matchers::ContainsSubstring("chunk"));
}

TEST_CASE("uniform points: symmetry moments") {
    SamplerSpec spec{42, 20000};
    for (int n : {2, 4}) {
        SpaceId space = SpaceId::real_proj(n);
        AmbientVec e0 = AmbientVec::basis(Field::Real, n + 1, 0);
        Estimate m = integrate_over_points(
            space, [&](const PointRep& p) { return dotR(p.v, e0) * dotR(p.v, e0); }, spec);
        REQUIRE(agree_3se(m, 1.0 / (n + 1)));
    }
    // Constant integrand: exact mean with zero SE.
    Estimate unit = integrate_over_points(SpaceId::sphere(2), [](const PointRep&) { return 1.0; },
                                          spec.with_samples(2000));
    REQUIRE(unit.mean == 1.0);
    REQUIRE(unit.std_error == 0.0);
}

TEST_CASE("distance distribution on S^1 is uniform (Kolmogorov-Smirnov 1%)") {
    SpaceId s1 = SpaceId::sphere(1);
    PointRep ref = PointRep::base_point(s1, 0);
    const std::size_t n = 5000;
    Rng rng(99);
    std::vector<double> d;
    d.reserve(n);
    for (std::size_t i = 0; i < n; ++i) d.push_back(distance(ref, sample_point(s1, rng)) / kPi);
    std::sort(d.begin(), d.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double hi = static_cast<double>(i + 1) / n - d[i];
        double lo = d[i] - static_cast<double>(i) / n;
        ks = std::max(ks, std::max(hi, lo));
    }
    REQUIRE(ks <= 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("twistor pushforward of uniform CP^{2N+1} is uniform on HP^N") {
    SamplerSpec spec{4242, 20000};
    auto psi = MapDescriptor::twistor_projection(1);
    AmbientVec e0 = AmbientVec::basis(Field::Quaternion, 2, 0);
    auto moment = [&](const PointRep& l) {
        double t = dotF(l.v, e0).norm();
        return t * t;
    };
    Estimate direct = integrate_over_points(SpaceId::quat_proj(1), moment, spec);
    Estimate pushed = mc_estimate(spec.with_seed(77), [&](Rng& rng) {
        return moment(apply(psi, sample_point(SpaceId::complex_proj(3), rng)));
    });
    REQUIRE(agree_3se(direct, pushed));
}

TEST_CASE("unit tangents: symmetry, norm, horizontality") {
    SamplerSpec spec{9, 20000};
    SpaceId cp2 = SpaceId::complex_proj(2);
    PointRep p0 = PointRep::base_point(cp2, 0);
    AmbientVec w = tangent_frame(p0)[0];
    Estimate m = mc_estimate(spec, [&](Rng& rng) {
        AmbientVec u = sample_unit_direction_at(p0, rng);
        double t = dotR(u, w);
        return t * t;
    });
    REQUIRE(agree_3se(m, 1.0 / cp2.real_dim()));

    Rng rng(10);
    for (int t = 0; t < 50; ++t) {
        TangentVec u = sample_unit_tangent(SpaceId::quat_proj(2), rng);
        REQUIRE(std::abs(u.u.norm() - 1.0) <= 1e-12);
        REQUIRE(u.horizontality_residual() <= 1e-12);
    }
}

TEST_CASE("geodesic sampler: closure, flow invariance, rotation invariance") {
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        GeodesicRep g = sample_geodesic(3, rng);
        REQUIRE(g.point_at(0.0).approx_equal(g.point_at(kPi), 1e-9));
        TangentVec vel = g.tangent_at(0.7);
        REQUIRE(std::abs(vel.u.norm() - 1.0) <= 1e-10);
        REQUIRE(vel.horizontality_residual() <= 1e-10);
    }

    SamplerSpec spec{31, 20000};
    AmbientVec a = AmbientVec::basis(Field::Real, 4, 1);
    auto plane_moment = [&](const GeodesicRep& g, const AmbientVec& dir) {
        double c1 = dotR(g.v1, dir), c2 = dotR(g.v2, dir);
        return c1 * c1 + c2 * c2;  // |P_plane dir|^2, a function of the geodesic only
    };
    Estimate at0 = mc_estimate(spec, [&](Rng& r) { return plane_moment(sample_geodesic(3, r), a); });

    // Flow invariance: re-basing along the geodesic does not change the law.
    Estimate flowed = mc_estimate(spec.with_seed(32), [&](Rng& r) {
        GeodesicRep g = sample_geodesic(3, r);
        double t = r.uniform(0.0, kPi);
        TangentVec vel = g.tangent_at(t);
        GeodesicRep rebased{g.space, vel.base.v, vel.u};
        return plane_moment(rebased, a);
    });
    REQUIRE(agree_3se(at0, flowed));

    // O(n+1) invariance: rotating the probe direction changes nothing.
    Rng iso_rng(5150);
    QMatrix rot = haar_isometry(SpaceId::real_proj(3), iso_rng);
    AmbientVec ra = rot.apply(a);
    Estimate rotated =
        mc_estimate(spec.with_seed(33), [&](Rng& r) { return plane_moment(sample_geodesic(3, r), ra); });
    REQUIRE(agree_3se(at0, rotated));
}

TEST_CASE("line sampler: incidence and unitary invariance") {
    Rng rng(12);
    // N=1: every sampled line is all of CP^1.
    SubmanifoldHandle l1 = sample_line(1, rng);
    REQUIRE(l1.basis.size() == 2);
    // The basis spans C^2, so any point lies on the line.
    PointRep any = sample_point(SpaceId::complex_proj(1), rng);
    AmbientVec proj = l1.basis[0].scaled(dotF(l1.basis[0], any.v)) +
                      l1.basis[1].scaled(dotF(l1.basis[1], any.v));
    REQUIRE((proj - any.v).norm() <= 1e-10);

    // Sampled lines pass through the tangent base point used to build them.
    for (int t = 0; t < 20; ++t) {
        TangentVec u = sample_unit_tangent(SpaceId::complex_proj(2), rng);
        SubmanifoldHandle line = line_through(u.base, u.u);
        PointRep lifted = apply(line.parametrization(),
                                PointRep::base_point(SpaceId::complex_proj(1), 0));
        REQUIRE(lifted.approx_equal(u.base));
    }

    // U(N+1) invariance of a line moment.
    SamplerSpec spec{13, 15000};
    AmbientVec e0 = AmbientVec::basis(Field::Complex, 3, 0);
    auto moment = [&](const SubmanifoldHandle& line, const AmbientVec& probe) {
        Quat c1 = dotF(line.basis[0], probe), c2 = dotF(line.basis[1], probe);
        return c1.norm2() + c2.norm2();
    };
    Estimate plain =
        mc_estimate(spec, [&](Rng& r) { return moment(sample_line(2, r), e0); });
    Rng iso_rng(5151);
    QMatrix rot = haar_isometry(SpaceId::complex_proj(2), iso_rng);
    AmbientVec re0 = rot.apply(e0);
    Estimate rotated =
        mc_estimate(spec.with_seed(14), [&](Rng& r) { return moment(sample_line(2, r), re0); });
    REQUIRE(agree_3se(plain, rotated));
}

TEST_CASE("quaternionic line samplers") {
    Rng rng(15);
    // N=1: the unique line.
    SubmanifoldHandle h1 = sample_hline(1, rng);
    PointRep any = sample_point(SpaceId::quat_proj(1), rng);
    AmbientVec proj = h1.basis[0].scaled(dotF(h1.basis[0], any.v)) +
                      h1.basis[1].scaled(dotF(h1.basis[1], any.v));
    REQUIRE((proj - any.v).norm() <= 1e-10);

    // Lambda = u H is J_tau-invariant for every twistor structure tau.
    PointRep l = sample_point(SpaceId::quat_proj(2), rng);
    for (int t = 0; t < 10; ++t) {
        TangentQuatLine lam = sample_hline_at(l, rng);
        auto basis = lam.oriented_basis();
        REQUIRE(basis.size() == 4);
        PointRep tau = sample_twistor(l, rng);
        QuatStructure j = quaternionic_structure(l, tau);
        for (const auto& b : basis) {
            AmbientVec jb = j(b);
            AmbientVec back(jb.field, jb.slots());
            for (const auto& e : basis) back = back + e * dotR(e, jb);
            REQUIRE((back - jb).norm() <= 1e-10);
        }
    }

    // Sp(N+1) invariance of an hline moment.
    SamplerSpec spec{16, 15000};
    AmbientVec e0 = AmbientVec::basis(Field::Quaternion, 3, 0);
    auto moment = [&](const SubmanifoldHandle& line, const AmbientVec& probe) {
        Quat c1 = dotF(line.basis[0], probe), c2 = dotF(line.basis[1], probe);
        return c1.norm2() + c2.norm2();
    };
    Estimate plain = mc_estimate(spec, [&](Rng& r) { return moment(sample_hline(2, r), e0); });
    Rng iso_rng(5152);
    QMatrix rot = haar_isometry(SpaceId::quat_proj(2), iso_rng);
    AmbientVec re0 = rot.apply(e0);
    Estimate rotated =
        mc_estimate(spec.with_seed(17), [&](Rng& r) { return moment(sample_hline(2, r), re0); });
    REQUIRE(agree_3se(plain, rotated));
}

TEST_CASE("adapted frames satisfy both defining clauses") {
    Rng rng(18);
    PointRep l = sample_point(SpaceId::quat_proj(2), rng);
    for (int t = 0; t < 10; ++t) {
        PointRep tau = sample_twistor(l, rng);
        QuatStructure j = quaternionic_structure(l, tau);
        auto frame = sample_frame(l, tau, rng);
        const int n = l.space.param;
        REQUIRE(static_cast<int>(frame.size()) == 4 * n);
        for (std::size_t i = 0; i < frame.size(); ++i) {
            for (std::size_t k = 0; k <= i; ++k)
                REQUIRE(dotR(frame[i], frame[k]) ==
                        Catch::Approx(i == k ? 1.0 : 0.0).margin(1e-10));
        }
        // Clause 1: e_{2i} = J_tau e_{2i-1}.
        for (int i = 0; 2 * i + 1 < static_cast<int>(frame.size()); ++i)
            REQUIRE((frame[static_cast<std::size_t>(2 * i + 1)] -
                     j(frame[static_cast<std::size_t>(2 * i)]))
                        .norm() <= 1e-10);
        // Clause 2: consecutive 4-tuples span quaternionic lines (projector test).
        for (int q4 = 0; q4 < n; ++q4) {
            const AmbientVec& u = frame[static_cast<std::size_t>(4 * q4)];
            for (int off = 1; off < 4; ++off) {
                const AmbientVec& e = frame[static_cast<std::size_t>(4 * q4 + off)];
                AmbientVec inside = u.scaled(dotF(u, e));
                REQUIRE((inside - e).norm() <= 1e-10);
            }
        }
    }
}

TEST_CASE("C_2 planes satisfy the totally complex orthogonality") {
    Rng rng(19);
    PointRep l = sample_point(SpaceId::quat_proj(2), rng);
    PointRep tau = sample_twistor(l, rng);
    for (int t = 0; t < 10; ++t) {
        C2Plane v = sample_c2(l, tau, rng);
        auto basis = v.oriented_basis();
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t k = 0; k <= i; ++k)
                REQUIRE(dotR(basis[i], basis[k]) ==
                        Catch::Approx(i == k ? 1.0 : 0.0).margin(1e-10));
        // For random complex lines lambda in V, the complement of lambda in
        // lambda H is orthogonal to V.
        const Quat s = v.structure.s;
        Quat sp = Quat::i() - s * s.x;
        if (sp.norm() < 0.3) sp = Quat::j() - s * s.y;
        sp = sp / sp.norm();
        for (int probe = 0; probe < 10; ++probe) {
            double a = rng.gaussian(), b = rng.gaussian(), c = rng.gaussian(), d = rng.gaussian();
            AmbientVec h = basis[0] * a + basis[1] * b + basis[2] * c + basis[3] * d;
            h = h.normalized();
            for (const Quat& comp_dir : {sp, s * sp}) {
                AmbientVec comp = h.scaled(comp_dir);
                for (const auto& e : basis) REQUIRE(std::abs(dotR(comp, e)) <= 1e-10);
            }
        }
    }
    REQUIRE_THROWS_AS(sample_c2(sample_point(SpaceId::quat_proj(1), rng),
                                sample_twistor(sample_point(SpaceId::quat_proj(1), rng), rng), rng),
                      std::invalid_argument);
}

TEST_CASE("CP^2 space sampler is symplectically invariant") {
    SamplerSpec spec{20, 10000};
    AmbientVec e0 = AmbientVec::basis(Field::Quaternion, 3, 0);
    auto moment = [&](const SubmanifoldHandle& x, const AmbientVec& probe) {
        double acc = 0.0;
        for (const auto& b : x.basis) acc += dotF(b, probe).norm2();
        return acc;
    };
    Estimate plain =
        mc_estimate(spec, [&](Rng& r) { return moment(sample_cp2_space(2, r), e0); });
    Rng iso_rng(5153);
    QMatrix rot = haar_isometry(SpaceId::quat_proj(2), iso_rng);
    AmbientVec re0 = rot.apply(e0);
    Estimate rotated = mc_estimate(spec.with_seed(21),
                                   [&](Rng& r) { return moment(sample_cp2_space(2, r), re0); });
    REQUIRE(agree_3se(plain, rotated));
    REQUIRE_THROWS_AS(sample_cp2_space(1, iso_rng), std::invalid_argument);
}

TEST_CASE("line-Fubini disintegration of the unit tangent measure") {
    // Averaging over U(CP^N) directly equals averaging over lines and then
    // over each line's unit tangents.
    SamplerSpec spec{22, 20000};
    SpaceId cp2 = SpaceId::complex_proj(2);
    AmbientVec probe = AmbientVec::basis(Field::Complex, 3, 1);
    auto f = [&](const PointRep& base, const AmbientVec& dir) {
        Quat c = dotF(dir, probe);
        double b = dotF(base.v, probe).norm2();
        return c.norm2() + 0.5 * b;
    };
    Estimate direct = mc_estimate(spec, [&](Rng& r) {
        TangentVec t = sample_unit_tangent(cp2, r);
        return f(t.base, t.u);
    });
    Estimate via_lines = mc_estimate(spec.with_seed(23), [&](Rng& r) {
        SubmanifoldHandle line = sample_line(2, r);
        PointRep y = apply(line.parametrization(), sample_point(SpaceId::complex_proj(1), r));
        auto frame = line.oriented_frame(y);
        double theta = r.uniform(0.0, 2 * kPi);
        AmbientVec dir = frame[0] * std::cos(theta) + frame[1] * std::sin(theta);
        return f(y, dir);
    });
    REQUIRE(agree_3se(direct, via_lines));
}

TEST_CASE("frame pushforward reproduces the Gr_1(l) average") {
    SamplerSpec spec{24, 15000};
    Rng seed_rng(25);
    PointRep l = sample_point(SpaceId::quat_proj(2), seed_rng);
    AmbientVec probe = sample_unit_direction_at(l, seed_rng);
    auto lambda_moment = [&](const std::vector<AmbientVec>& basis4) {
        double acc = 0.0;
        for (const auto& e : basis4) {
            double c = dotR(e, probe);
            acc += c * c;
        }
        return acc;  // |P_Lambda probe|^2
    };
    Estimate via_frames = mc_estimate(spec, [&](Rng& r) {
        PointRep tau = sample_twistor(l, r);
        auto frame = sample_frame(l, tau, r);
        return lambda_moment({frame[0], frame[1], frame[2], frame[3]});
    });
    Estimate via_gr = mc_estimate(spec.with_seed(26), [&](Rng& r) {
        return lambda_moment(sample_hline_at(l, r).oriented_basis());
    });
    REQUIRE(agree_3se(via_frames, via_gr));
}
