#include <catch2/catch_amalgamated.hpp>

#include "rank1/suites.hpp"

using namespace rank1;

namespace {
constexpr double kPi = 3.14159265358979323846;

const CheckReport& find_check(const std::vector<CheckReport>& checks, const std::string& id) {
    for (const auto& c : checks)
        if (c.id == id) return c;
    FAIL("missing check " + id);
    return checks.front();
}
}  // namespace

TEST_CASE("theorem bounds: values and exactness") {
    auto l_star = catalog_class_invariant(TheoremId::Rpn);

    // Derived RP^2 bound at p=2 equals E_2(Id) = 4 pi; printed carries 2^p.
    auto derived = bound_rpn(BoundQuery::rpn(2, 2.0, l_star, Mode::Derived));
    REQUIRE(derived.exact.has_value());
    REQUIRE(*derived.exact == ExactConstant::rational(4, 1, 1));
    auto printed = bound_rpn(BoundQuery::rpn(2, 2.0, l_star, Mode::Printed));
    REQUIRE(*printed.exact == ExactConstant::rational(16, 1, 1));

    // Derived chain re-assembled from the geodesic-space volume at even p:
    // 2^{p-1} n^{p/2} / (sigma(n-1)^p sigma(n)^{p-1}) (Vol(G) L*)^p.
    for (int n : {2, 3}) {
        for (int p : {2, 4}) {
            ExactConstant vol_g =
                measure_space_volume(MeasureSpace::geodesics_rpn(n), Mode::Derived);
            BigInt n_pow = 1;
            for (int i = 0; i < p / 2; ++i) n_pow *= n;
            ExactConstant chain = ExactConstant(BigRat(BigInt(1) << (p - 1)) * n_pow) *
                                  (vol_g * ExactConstant::pi()).pow(static_cast<unsigned>(p));
            auto denom = (sphere_volume(n - 1).pow(static_cast<unsigned>(p)) *
                          sphere_volume(n).pow(static_cast<unsigned>(p - 1)));
            auto chain_value = chain.try_divide(denom);
            REQUIRE(chain_value.has_value());
            auto direct = bound_rpn(BoundQuery::rpn(n, p, l_star, Mode::Derived));
            REQUIRE(*chain_value == *direct.exact);
        }
    }

    // CP^N bound: printed and derived coincide; identity values.
    auto a_star = catalog_class_invariant(TheoremId::Cpn);
    auto cp = bound_cpn(BoundQuery::cpn(2, 2.0, a_star, Mode::Derived));
    REQUIRE(*cp.exact == ExactConstant::rational(2, 1, 2));
    REQUIRE(bound_cpn(BoundQuery::cpn(2, 2.0, a_star, Mode::Printed)).value ==
            Catch::Approx(cp.value));
    REQUIRE(*bound_cpn(BoundQuery::cpn(1, 2.0, a_star, Mode::Derived)).exact ==
            ExactConstant::rational(2, 1, 1));

    // HP^N bound at p=4 with the catalog B*.
    auto b_star = catalog_class_invariant(TheoremId::Hpn);
    auto hp = bound_hpn(BoundQuery::hpn(2, 4.0, b_star, Mode::Derived));
    REQUIRE(hp.strict);
    REQUIRE(*hp.exact == ExactConstant::rational(8, 27, 4));

    REQUIRE_THROWS_AS(bound_rpn(BoundQuery::rpn(2, 0.5, l_star, Mode::Derived)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(bound_cpn(BoundQuery::cpn(2, 1.0, a_star, Mode::Derived)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(bound_hpn(BoundQuery::hpn(1, 4.0, b_star, Mode::Derived)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(bound_hpn(BoundQuery::hpn(2, 2.0, b_star, Mode::Derived)),
                      std::invalid_argument);
}

TEST_CASE("norm identity check") {
    SamplerSpec spec{71, 40000};
    auto r = check_norm_identity(6, 10, spec);
    REQUIRE(r.status == CheckStatus::Pass);
}

TEST_CASE("line-Fubini checks on CP^2") {
    SamplerSpec spec{72, 30000};
    auto id = check_line_fubini(MapDescriptor::identity(SpaceId::complex_proj(2)), spec, "id");
    REQUIRE(id.status == CheckStatus::Pass);
    // For the identity both sides are exactly 2 pi^2.
    REQUIRE(*id.exact == Catch::Approx(2.0 * kPi * kPi).epsilon(1e-9));
    REQUIRE(*id.estimate == Catch::Approx(2.0 * kPi * kPi).epsilon(1e-9));

    QMatrix a(Field::Complex, 3, 3);
    Rng rng(73);
    for (int r2 = 0; r2 < 3; ++r2)
        for (int c = 0; c < 3; ++c) a.at(r2, c) = Quat::complex(rng.gaussian(), rng.gaussian());
    auto f = MapDescriptor::projective_linear(SpaceId::complex_proj(2), a);
    auto pl = check_line_fubini(f, spec, "random-projective");
    REQUIRE(pl.status == CheckStatus::Pass);
}

TEST_CASE("geodesic-Fubini check on RP^3") {
    SamplerSpec spec{74, 20000};
    auto id = check_geodesic_fubini(MapDescriptor::identity(SpaceId::real_proj(3)), spec, "id");
    REQUIRE(id.status == CheckStatus::Pass);
    QMatrix m(Field::Real, 4, 4);
    m.at(0, 0) = Quat(2.0);
    m.at(1, 1) = Quat(1.0);
    m.at(2, 2) = Quat(1.0);
    m.at(3, 3) = Quat(0.5);
    auto f = MapDescriptor::projective_linear(SpaceId::real_proj(3), m);
    auto pl = check_geodesic_fubini(f, spec, "diag");
    REQUIRE(pl.status == CheckStatus::Pass);
}

TEST_CASE("pointwise quaternionic lemma checks") {
    SamplerSpec spec{75, 20000};
    Rng rng(76);
    // Homothety: equality within 3 SE.
    Eigen::MatrixXd g(10, 8);
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 8; ++c) g(r, c) = rng.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd iso = qr.householderQ() * Eigen::MatrixXd::Identity(10, 8);
    auto eq = check_pointwise_hpn(2, 1.7 * iso, spec, PointwiseExpectation::Equality, "homothety");
    REQUIRE(eq.status == CheckStatus::Pass);
    // Exact algebraic value: e_4 = (16 N^2) c^4 at N=2, c=1.7.
    REQUIRE(*eq.exact == Catch::Approx(64.0 * std::pow(1.7, 4)).epsilon(1e-12));

    // Rank-3: the right side vanishes, the gap is the full density.
    Eigen::MatrixXd rank3 = Eigen::MatrixXd::Zero(10, 8);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 8; ++c) rank3(r, c) = rng.gaussian();
    auto strict = check_pointwise_hpn(2, rank3, spec, PointwiseExpectation::Inequality, "rank3");
    REQUIRE(strict.status == CheckStatus::Pass);
    REQUIRE(*strict.estimate == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(*strict.exact > 0.0);

    // Generic full-rank: inequality with a positive gap.
    Eigen::MatrixXd generic(10, 8);
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 8; ++c) generic(r, c) = rng.gaussian();
    auto gen = check_pointwise_hpn(2, generic, spec, PointwiseExpectation::Inequality, "generic");
    REQUIRE(gen.status == CheckStatus::Pass);
    REQUIRE(*gen.exact - *gen.estimate > 3.0 * *gen.std_error);
}

TEST_CASE("averaging contradiction checks") {
    SamplerSpec spec{77, 30000};
    auto checks = check_average_contradiction(2, spec);
    REQUIRE(checks.size() == 5);
    for (const auto& c : checks) {
        INFO(c.id << ": " << c.notes);
        REQUIRE(c.status == CheckStatus::Pass);
    }
    REQUIRE(checks[0].id == "average-contradiction-ratio");
}

TEST_CASE("dilation sweep on S^3") {
    SamplerSpec spec{78, 20000};
    auto result = dilation_sweep(3, {2.0, 3.0, 4.0}, {1.0, 1.5, 2.0, 3.0, 4.0}, spec);
    REQUIRE(result.checks.size() == 3);
    for (const auto& c : result.checks) {
        INFO(c.id << ": " << c.notes);
        REQUIRE(c.status == CheckStatus::Pass);
    }
    // lambda = 1 is the identity: E_p = n^{p/2} sigma(n) exactly.
    REQUIRE(result.energies[0][0].mean == Catch::Approx(3.0 * 2.0 * kPi * kPi).epsilon(1e-9));
}

TEST_CASE("suite dispatch, reproducibility and serialization") {
    SamplerSpec spec{7, 4000};
    auto report = run_suite("constants-audit", spec);
    REQUIRE_FALSE(report.failed());
    REQUIRE(report.discrepancies() >= 4);

    auto again = run_suite("constants-audit", spec);
    REQUIRE(to_json(report).dump(2) == to_json(again).dump(2));
    REQUIRE(to_csv(report) == to_csv(again));

    // The same estimates regardless of worker count.
    SamplerSpec wide = spec;
    wide.workers = 8;
    auto fub1 = check_norm_identity(6, 5, spec);
    auto fub8 = check_norm_identity(6, 5, wide);
    REQUIRE(*fub1.estimate == *fub8.estimate);

    REQUIRE_THROWS_AS(run_suite("nope", spec), std::invalid_argument);

    const auto& names = suite_names();
    REQUIRE(std::find(names.begin(), names.end(), "all") != names.end());

    // CSV numeric fields equal their JSON counterparts.
    auto j = to_json(report);
    std::string csv = to_csv(report);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    REQUIRE(header == "quantity,exact,float,estimate,std_error,samples,seed,status");
}
