#include <catch2/catch_amalgamated.hpp>

#include "rank1/functionals.hpp"

using namespace rank1;

namespace {

constexpr double kPi = 3.14159265358979323846;

QMatrix real_diag(std::initializer_list<double> diag) {
    QMatrix m(Field::Real, static_cast<int>(diag.size()), static_cast<int>(diag.size()));
    int i = 0;
    for (double d : diag) m.at(i, i) = Quat(d), ++i;
    return m;
}

}  // namespace

TEST_CASE("energy densities of catalog maps") {
    Rng rng(8);
    PointRep h = sample_point(SpaceId::quat_proj(2), rng);
    REQUIRE(energy_density(MapDescriptor::identity(SpaceId::quat_proj(2)), h, 4.0) ==
            Catch::Approx(64.0).margin(1e-9));

    for (int n : {1, 2, 3}) {
        PointRep c = sample_point(SpaceId::complex_proj(n), rng);
        REQUIRE(energy_density(MapDescriptor::identity(SpaceId::complex_proj(n)), c, 2.0) ==
                Catch::Approx(2.0 * n).margin(1e-10));
    }

    for (int n : {1, 2}) {
        PointRep z = sample_point(SpaceId::complex_proj(2 * n + 1), rng);
        REQUIRE(energy_density(MapDescriptor::twistor_projection(n), z, 2.0) ==
                Catch::Approx(4.0 * n).margin(1e-9));
    }
}

TEST_CASE("p-energies of identity maps") {
    SamplerSpec spec{42, 2000};
    Estimate rp2 = p_energy(EnergyQuery(MapDescriptor::identity(SpaceId::real_proj(2)), 2.0, spec));
    REQUIRE(rp2.mean == Catch::Approx(4.0 * kPi).epsilon(1e-9));
    REQUIRE(rp2.std_error <= 1e-9);
    REQUIRE(rp2.exact.has_value());
    REQUIRE(*rp2.exact == ExactConstant::rational(4, 1, 1));

    Estimate cp2 = p_energy(EnergyQuery(MapDescriptor::identity(SpaceId::complex_proj(2)), 2.0, spec));
    REQUIRE(cp2.mean == Catch::Approx(2.0 * kPi * kPi).epsilon(1e-9));
    REQUIRE(*cp2.exact == ExactConstant::rational(2, 1, 2));

    Estimate hp2 = p_energy(EnergyQuery(MapDescriptor::identity(SpaceId::quat_proj(2)), 4.0, spec));
    REQUIRE(hp2.mean == Catch::Approx(8.0 / 15.0 * std::pow(kPi, 4)).epsilon(1e-9));
    REQUIRE(*hp2.exact == ExactConstant::rational(8, 15, 4));

    REQUIRE_THROWS_AS(EnergyQuery(MapDescriptor::identity(SpaceId::sphere(2)), 0.5, spec),
                      std::invalid_argument);
}

TEST_CASE("curve masses of closed geodesics") {
    Rng rng(9);
    GeodesicRep g = sample_geodesic(2, rng);
    SpaceId rp2 = SpaceId::real_proj(2);
    REQUIRE(curve_mass(MapDescriptor::identity(rp2), g) == Catch::Approx(kPi).epsilon(1e-12));
    REQUIRE(curve_mass(MapDescriptor::projective_linear(rp2, real_diag({1.0, 1.0, 1.0})), g) ==
            Catch::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("dilation-stretched great circles match an arc-length oracle") {
    Rng rng(19);
    // Great circle on S^2 precomposed with a conformal dilation; quadrature
    // of the pushed speed against a fine polyline arc length.
    SpaceId s2 = SpaceId::sphere(2);
    PointRep x = sample_point(s2, rng);
    AmbientVec u = sample_unit_direction_at(x, rng);
    auto dil = MapDescriptor::conformal_dilation(2, 2.0);

    auto at = [&](double t) { return PointRep(s2, x.v * std::cos(t) + u * std::sin(t)); };
    auto vel = [&](double t) { return x.v * (-std::sin(t)) + u * std::cos(t); };

    const double kArc = 2.0 * kPi;
    double oracle = 0.0;
    const int steps = 4000;
    PointRep prev = apply(dil, at(0.0));
    for (int i = 1; i <= steps; ++i) {
        PointRep next = apply(dil, at(kArc * i / steps));
        oracle += distance(prev, next);
        prev = next;
    }

    const std::array<double, 4> nodes = {0.1834346424956498, 0.5255324099163290,
                                         0.7966664774136267, 0.9602898564975363};
    const std::array<double, 4> weights = {0.3626837833783620, 0.3137066458778873,
                                           0.2223810344533745, 0.1012285362903763};
    double quadrature = 0.0;
    const int panels = 32;
    const double width = kArc / panels;
    for (int panel = 0; panel < panels; ++panel) {
        double mid = (panel + 0.5) * width;
        for (std::size_t gp = 0; gp < 4; ++gp)
            for (double sign : {-1.0, 1.0}) {
                double t = mid + sign * 0.5 * width * nodes[gp];
                quadrature += 0.5 * width * weights[gp] * push_tangent(dil, at(t), vel(t)).norm();
            }
    }
    REQUIRE(quadrature == Catch::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("surface masses of model submanifolds") {
    SamplerSpec spec{10, 4000};
    Rng rng(10);

    SubmanifoldHandle line = sample_line(2, rng);
    Estimate a = surface_mass(MapDescriptor::identity(SpaceId::complex_proj(2)), line, spec);
    REQUIRE(within_se(a.mean, kPi, a.std_error));

    SubmanifoldHandle hline = sample_hline(2, rng);
    Estimate b = surface_mass(MapDescriptor::identity(SpaceId::quat_proj(2)), hline, spec);
    REQUIRE(within_se(b.mean, kPi * kPi / 6.0, b.std_error));

    SubmanifoldHandle x = sample_cp2_space(2, rng);
    Estimate c = surface_mass(MapDescriptor::identity(SpaceId::quat_proj(2)), x, spec);
    REQUIRE(within_se(c.mean, kPi * kPi / 2.0, c.std_error));
}

TEST_CASE("pullback volumes") {
    SamplerSpec spec{11, 4000};
    Estimate vol = pullback_volume(MapDescriptor::identity(SpaceId::complex_proj(2)), spec);
    REQUIRE(within_se(vol.mean, kPi * kPi / 2.0, vol.std_error));

    // Degree-d self-map of CP^1 multiplies the cohomological area by d.
    for (int d : {2, 3}) {
        Estimate v = pullback_volume(MapDescriptor::power_map(d),
                                     SamplerSpec{static_cast<std::uint64_t>(100 + d), 20000});
        REQUIRE(within_se(v.mean, d * kPi, v.std_error));
    }

    // A twistor fibre collapses under the projection: the composition is
    // rank deficient and its pullback volume vanishes.
    Rng rng(12);
    PointRep l = sample_point(SpaceId::quat_proj(1), rng);
    auto fiber = twistor_fiber(l);
    auto collapse = MapDescriptor::compose(
        {fiber.parametrization(), MapDescriptor::twistor_projection(1)});
    Estimate zero = pullback_volume(collapse, spec.with_samples(500));
    REQUIRE(std::abs(zero.mean) <= 1e-8);

    // The fibre itself has area pi (its parametrization is isometric).
    Estimate area = pullback_volume(fiber.parametrization(), spec.with_samples(500));
    REQUIRE(area.mean == Catch::Approx(kPi).epsilon(1e-9));

    REQUIRE_THROWS_AS(
        pullback_volume(MapDescriptor::hopf_projection(3, Family::ComplexProj), spec),
        std::invalid_argument);
}

TEST_CASE("dimension-energy lower bound") {
    // Identity on S^n realizes equality at p = n.
    for (int n : {2, 3}) {
        SamplerSpec spec{13, 2000};
        double vol = sphere_volume(n).to_double();
        double bound = elementary_bound(n, n, vol, vol);
        REQUIRE(bound == Catch::Approx(std::pow(n, n / 2.0) * vol).epsilon(1e-12));
        Estimate energy =
            p_energy(EnergyQuery(MapDescriptor::identity(SpaceId::sphere(n)), n, spec));
        REQUIRE(energy.mean == Catch::Approx(bound).epsilon(1e-9));
    }

    // Holomorphic self-maps of CP^1 at p = m = 2: E_2(F) = 2 Area(F).
    SamplerSpec spec{14, 20000};
    Estimate e2 = p_energy(EnergyQuery(MapDescriptor::power_map(2), 2.0, spec));
    Estimate area = pullback_volume(MapDescriptor::power_map(2), spec);
    REQUIRE(within_se(e2.mean, 2.0 * area.mean, e2.std_error, 2.0 * area.std_error));
    double bound = elementary_bound(2, 2.0, area.mean, kPi);
    REQUIRE(within_se(e2.mean, bound, e2.std_error, 2.0 * area.std_error));

    REQUIRE_THROWS_AS(elementary_bound(3, 2.0, 1.0, 1.0), std::invalid_argument);

    auto exact = elementary_bound_exact(2, 4, ExactConstant::pi(), ExactConstant::pi());
    REQUIRE(exact.has_value());
    // 2^2 * (pi)^2 / (pi)^1 = 4 pi
    REQUIRE(*exact == ExactConstant::rational(4, 1, 1));
}

TEST_CASE("AM-GM chain on complex line directions") {
    // pi(|dF u1|^2 + |dF u2|^2) >= 2 pi |det dF|_Lambda|, equality iff the
    // two singular values on Lambda agree.
    Rng rng(15);
    SpaceId cp2 = SpaceId::complex_proj(2);
    QMatrix a(Field::Complex, 3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) a.at(r, c) = Quat::complex(rng.gaussian(), rng.gaussian());
    auto f = MapDescriptor::projective_linear(cp2, a);
    for (int t = 0; t < 40; ++t) {
        PointRep x = sample_point(cp2, rng);
        AmbientVec u1 = sample_unit_direction_at(x, rng);
        AmbientVec u2 = u1.scaled(Quat::i());
        double n1 = push_tangent(f, x, u1).norm2();
        double n2 = push_tangent(f, x, u2).norm2();
        double det = det_restriction(f, x, {u1, u2});
        REQUIRE(kPi * (n1 + n2) >= 2.0 * kPi * det - 1e-9);
    }
    // Equality case: the identity map.
    PointRep x = sample_point(cp2, rng);
    AmbientVec u1 = sample_unit_direction_at(x, rng);
    AmbientVec u2 = u1.scaled(Quat::i());
    auto id = MapDescriptor::identity(cp2);
    double lhs = kPi * (push_tangent(id, x, u1).norm2() + push_tangent(id, x, u2).norm2());
    double rhs = 2.0 * kPi * det_restriction(id, x, {u1, u2});
    REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("equality diagnostics classify the catalog") {
    SamplerSpec spec{16, 128};
    auto id = equality_diagnostics(MapDescriptor::identity(SpaceId::complex_proj(2)), spec);
    REQUIRE(id.verdict == ConformalVerdict::HomothetyLike);
    REQUIRE(id.norm_variance <= 1e-12);
    REQUIRE(id.anisotropy_max <= 1.0 + 1e-10);

    auto dil = equality_diagnostics(MapDescriptor::conformal_dilation(3, 2.0), spec);
    REQUIRE(dil.verdict == ConformalVerdict::SemiconformalLike);
    REQUIRE(dil.norm_max > dil.norm_min * (1.0 + 1e-3));

    auto generic = equality_diagnostics(
        MapDescriptor::projective_linear(SpaceId::real_proj(2), real_diag({2.0, 1.0, 1.0})),
        spec);
    REQUIRE(generic.verdict == ConformalVerdict::Generic);
}

TEST_CASE("energy density is frame independent") {
    Rng rng(17);
    SpaceId cp2 = SpaceId::complex_proj(2);
    QMatrix a(Field::Complex, 3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) a.at(r, c) = Quat::complex(rng.gaussian(), rng.gaussian());
    auto f = MapDescriptor::projective_linear(cp2, a);
    for (int t = 0; t < 10; ++t) {
        PointRep x = sample_point(cp2, rng);
        double via_density = energy_density_squared_norm(f, x);
        double via_matrix = differential(f, x).frobenius2();
        REQUIRE(via_density == Catch::Approx(via_matrix).margin(1e-10 * (1.0 + via_matrix)));
    }
}
