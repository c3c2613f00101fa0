#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stokes/catalog.hpp"
#include "stokes/scenarios.hpp"
#include "stokes/stokes.hpp"

using namespace stokes;
using std::numbers::pi;

namespace {

void expect_near(Vec3 a, Vec3 b, double tol)
{
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

Mat3 random_matrix(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    Mat3 a{};
    for (auto& row : a)
        for (auto& x : row) x = entry(rng);
    return a;
}

} // namespace

TEST(Curl, RotationField)
{
    const VectorField3 rot{[](Vec3 p) { return Vec3{-p.y, p.x, 0.0}; }};
    for (Vec3 x : {Vec3{0, 0, 0}, Vec3{1.5, -2.0, 0.3}}) expect_near(curl(rot, x), {0.0, 0.0, 2.0}, 1e-9);
}

TEST(Curl, SingularFieldIsCurlFreeOffAxis)
{
    const auto f = catalog::singular_field();
    expect_near(curl(f, {1.0, 0.0, 0.0}), {}, 0.0);
    expect_near(curl(f.without_analytic_derivatives(), {1.0, 0.0, 0.0}), {}, 1e-8);
    expect_near(curl(f.without_analytic_derivatives(), {-0.4, 0.7, 2.0}), {}, 1e-8);
}

TEST(Curl, LinearFieldMatchesDirectDifferentiation)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const Mat3 a = random_matrix(rng);
        const Vec3 expected{a[2][1] - a[1][2], a[0][2] - a[2][0], a[1][0] - a[0][1]};
        const auto f = catalog::linear_field(a);
        const Vec3 x{0.3, -1.2, 0.8};
        expect_near(curl(f, x), expected, 1e-15);
        expect_near(curl(f.without_analytic_derivatives(), x), expected, 1e-9);
        expect_near(oracle::fd_curl(f.eval, x, 1e-4), expected, 1e-9);
    }
}

TEST(Curl, GuardViolationIsFieldDomainError)
{
    const auto f = catalog::singular_field();
    EXPECT_THROW(curl(f, {0.0, 0.0, 1.0}), FieldDomainError);
    // The finite-difference stencil around (1e-6, 0, 0) touches the axis.
    EXPECT_THROW(curl(f.without_analytic_derivatives(), {1e-6, 0.0, 0.0}), FieldDomainError);
}

TEST(Pullback, Examples)
{
    const auto plane = catalog::flat(PlanarRegion::rectangle(0.0, 1.0, 0.0, 1.0));
    const auto form = pullback(VectorField2to3{[](Vec2) { return Vec3{1.0, 0.0, 0.0}; }}, plane.surface);
    EXPECT_EQ(form.P({0.3, 0.4}), 1.0);
    EXPECT_EQ(form.Q({0.3, 0.4}), 0.0);

    const auto strip = catalog::moebius(0.3);
    const auto u2 = pullback(catalog::u_squared_field(), strip.surface);
    for (Vec2 p : {Vec2{0.5, 0.1}, Vec2{2.0, -0.2}, Vec2{5.5, 0.3}}) {
        const double c = std::cos(0.5 * p.u);
        const double dxdu = -0.5 * p.v * std::sin(0.5 * p.u) * std::cos(p.u) - (1.0 + p.v * c) * std::sin(p.u);
        EXPECT_NEAR(u2.P(p), p.u * p.u * dxdu, 1e-14);
        EXPECT_NEAR(u2.Q(p), p.u * p.u * c * std::cos(p.u), 1e-14);
    }

    const auto zero = pullback(VectorField2to3{[](Vec2) { return Vec3{}; }}, strip.surface);
    EXPECT_EQ(zero.P({1.0, 0.1}), 0.0);
    EXPECT_EQ(zero.Q({1.0, 0.1}), 0.0);
}

TEST(ComposeField, Examples)
{
    const auto plane = catalog::flat(PlanarRegion::rectangle(0.0, 1.0, 0.0, 1.0));
    const auto id = compose_field(catalog::linear_field(Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), plane.surface);
    expect_near(id({0.25, 0.75}), {0.25, 0.75, 0.0}, 0.0);

    const auto strip = catalog::moebius(0.3);
    const auto g = compose_field(catalog::singular_field(), strip.surface);
    expect_near(g({0.0, 0.0}), {0.0, 1.0, 0.0}, 1e-15);
    ASSERT_TRUE(static_cast<bool>(g.partials_analytic));

    // r(0, -1) = (0, 0, 0) on a strip wider than 1.
    const auto wide = catalog::moebius(1.5);
    const auto bad = compose_field(catalog::singular_field(), wide.surface);
    try {
        bad({0.0, -1.0});
        FAIL() << "expected FieldDomainError";
    } catch (const FieldDomainError& e) {
        expect_near(e.point(), {0.0, 0.0, 0.0}, 0.0);
    }
}

TEST(ComposeField, ChainRuleMatchesFiniteDifferences)
{
    const auto strip = catalog::moebius(0.3);
    const auto g = compose_field(catalog::singular_field(), strip.surface);
    const auto g_fd = g.without_analytic_partials();
    for (Vec2 p : {Vec2{0.4, 0.1}, Vec2{3.0, -0.25}, Vec2{6.0, 0.0}}) {
        const auto [au, av] = field_partials(g, p);
        const auto [fu, fv] = field_partials(g_fd, p);
        expect_near(au, fu, 1e-8);
        expect_near(av, fv, 1e-8);
    }
}

TEST(Green, UnitSquareAreaForm)
{
    const auto square = PlanarRegion::rectangle(0.0, 1.0, 0.0, 1.0);
    const PullbackOneForm area{[](Vec2 p) { return -0.5 * p.v; }, [](Vec2 p) { return 0.5 * p.u; }};
    EXPECT_NEAR(greens_lhs(area, square).value, 1.0, 1e-14);
    EXPECT_NEAR(greens_rhs(area, square).value, 1.0, 1e-10);
    const auto zero = verify_green(PullbackOneForm::zero(), square);
    EXPECT_TRUE(zero.pass);
    EXPECT_EQ(zero.lhs->value, 0.0);
    EXPECT_EQ(zero.rhs->value, 0.0);
}

TEST(Green, UnitDiskCubicForm)
{
    // Q_u - P_v = u^2 + v^2; polar oracle: integral of rho^2 * 2 pi rho over [0, 1] = pi / 2.
    const double polar = oracle::midpoint_1d([](double rho) { return 2.0 * pi * rho * rho * rho; }, 0.0, 1.0, 200000);
    ASSERT_NEAR(polar, pi / 2.0, 1e-9);

    auto upper = [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); };
    auto slope = [upper](double x) { return -x / upper(x); };
    const auto disk = PlanarRegion::type_i(-1.0, 1.0,
                                           Profile{[upper](double x) { return -upper(x); },
                                                   [slope](double x) { return -slope(x); }},
                                           Profile{upper, slope});
    const PullbackOneForm cubic{[](Vec2 p) { return -p.v * p.v * p.v / 3.0; }, [](Vec2 p) { return p.u * p.u * p.u / 3.0; },
                                [](Vec2 p) { return p.u * p.u; }, [](Vec2 p) { return -p.v * p.v; }};
    const auto report = verify_green(cubic, disk, {}, 1e-8);
    EXPECT_TRUE(report.pass) << report.abs_diff;
    EXPECT_NEAR(report.lhs->value, polar, 1e-8);
    EXPECT_NEAR(report.rhs->value, polar, 1e-8);
}

TEST(StokesGeneral, MoebiusUSquared)
{
    const auto strip = catalog::moebius(0.3);
    const auto g = catalog::u_squared_field();
    const double expected = 2.0 * 0.3 * oracle::moebius_u_factor();
    EXPECT_NEAR(stokes_general_lhs(g, strip.surface, strip.region).value, expected, 1e-8);
    EXPECT_NEAR(stokes_general_rhs(g, strip.surface, strip.region).value, expected, 1e-8);
}

TEST(StokesGeneral, SingularPullbackVanishes)
{
    const auto strip = catalog::moebius(0.3);
    const auto g = compose_field(catalog::singular_field(), strip.surface);
    EXPECT_NEAR(stokes_general_lhs(g, strip.surface, strip.region).value, 0.0, 1e-8);
    EXPECT_NEAR(stokes_general_rhs(g, strip.surface, strip.region).value, 0.0, 1e-8);
}

TEST(StokesGeneral, FlatShearField)
{
    const auto region = PlanarRegion::rectangle(-1.0, 2.0, 0.0, 0.5);
    const auto plane = catalog::flat(region);
    const VectorField2to3 g{[](Vec2 p) { return Vec3{p.v, 0.0, 0.0}; }};
    EXPECT_NEAR(stokes_general_rhs(g, plane.surface, region).value, -1.5, 1e-9);
    EXPECT_NEAR(stokes_general_lhs(g, plane.surface, region).value, -1.5, 1e-12);
}

// Closed-form witness: a constant G gives the exact form d(G.r), so the loop integral vanishes.
TEST(StokesGeneral, ConstantFieldLoopIntegralVanishes)
{
    const std::vector<catalog::SurfacePatch> patches{catalog::moebius(0.3), catalog::moebius(3.0),
                                                     catalog::spanning_surface(0.3)};
    const VectorField2to3 g{[](Vec2) { return Vec3{0.7, -1.3, 2.1}; }, [](Vec2) { return std::pair{Vec3{}, Vec3{}}; }};
    for (const auto& patch : patches) {
        EXPECT_LE(std::abs(stokes_general_lhs(g, patch.surface, patch.region).value), 1e-10);
        EXPECT_EQ(stokes_general_rhs(g, patch.surface, patch.region).value, 0.0);
    }
}

TEST(StokesCurl, Examples)
{
    const auto strip = catalog::moebius(0.3);
    const VectorField3 constant{[](Vec3) { return Vec3{1.0, 2.0, 3.0}; }};
    EXPECT_NEAR(stokes_curl_rhs(constant, strip.surface, strip.region).value, 0.0, 1e-12);
    EXPECT_EQ(stokes_curl_rhs(catalog::singular_field(), strip.surface, strip.region).value, 0.0);

    const Mat3 a{{{0.1, 0.9, -0.4}, {-0.2, 0.5, 0.3}, {0.6, -0.8, 0.2}}};
    const double delta = 0.3;
    const auto span = catalog::spanning_surface(delta);
    // Around B: the projected curve winds twice about an annulus-shaped region, giving
    // int y dx = -pi (2 + delta^2); integration by parts gives int z dx = -pi delta^2 / 2.
    const double expected =
        pi * (2.0 + delta * delta) * (a[1][0] - a[0][1]) + 0.5 * pi * delta * delta * (a[2][0] - a[0][2]);
    const double walked = oracle::edge_line_integral([&](Vec3 p) { return a * p; }, delta, 20000);
    EXPECT_NEAR(walked, expected, 1e-8);
    EXPECT_NEAR(stokes_curl_rhs(catalog::linear_field(a), span.surface, span.region).value, expected, 1e-8);
    EXPECT_NEAR(catalog::spanning_linear_value(a, delta), expected, 1e-14);
}

TEST(StokesCurl, GuardFailureFailsWholeIntegral)
{
    const auto strip = catalog::moebius(0.3);
    VectorField3 half{[](Vec3 p) { return Vec3{p.y, 0.0, 0.0}; }};
    half.guard = [](Vec3 p) { return p.x > 0.0; };
    EXPECT_THROW(stokes_curl_rhs(half, strip.surface, strip.region), FieldDomainError);
}

TEST(IntegrandIdentity, Examples)
{
    const auto strip = catalog::moebius(0.3);
    const VectorField3 constant{[](Vec3) { return Vec3{1.0, -2.0, 0.5}; }};
    EXPECT_LE(integrand_identity_gap(constant, strip.surface, {1.0, 0.1}), 1e-9);

    const VectorField3 h_only{[](Vec3 p) { return Vec3{0.0, 0.0, p.x * p.y}; }};
    EXPECT_LE(integrand_identity_gap(h_only, strip.surface, {1.0, 0.1}), 1e-6);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-pi + 0.01, pi - 0.01);
    std::uniform_real_distribution<double> t(0.01, 0.99);
    const auto span = catalog::spanning_surface(0.3);
    const auto f = catalog::linear_field(random_matrix(rng));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) worst = std::max(worst, integrand_identity_gap(f, span.surface, {u(rng), t(rng)}));
    EXPECT_LE(worst, 1e-10);
}

TEST(Verify, ReportsAndErrorCapture)
{
    const auto strip = catalog::moebius(0.3);
    const auto general = verify_general(catalog::u_squared_field(), strip.surface, strip.region);
    EXPECT_TRUE(general.pass);
    EXPECT_NEAR(general.lhs->value, -16.0 / 3.0, 1e-8);
    EXPECT_EQ(general.abs_diff, std::abs(general.lhs->value - general.rhs->value));
    EXPECT_LE(general.abs_diff, 1e-9);

    const auto span = catalog::spanning_surface(0.3);
    const auto curl_form = verify_curl_form(catalog::linear_field(Mat3{{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}}),
                                            span.surface, span.region, {}, 1e-6);
    EXPECT_TRUE(curl_form.pass);

    VectorField3 half{[](Vec3 p) { return Vec3{p.y, 0.0, 0.0}; }};
    half.guard = [](Vec3 p) { return p.x > 0.0; };
    const auto failed = verify_curl_form(half, strip.surface, strip.region);
    EXPECT_FALSE(failed.pass);
    ASSERT_TRUE(failed.error.has_value());
    EXPECT_NE(failed.error->find("undefined"), std::string::npos);
}

TEST(StokesInvariants, Linearity)
{
    std::mt19937_64 rng(5);
    const auto span = catalog::spanning_surface(0.3);
    const QuadratureSpec spec{8, 128, 64, 2};
    const auto f1 = catalog::linear_field(random_matrix(rng));
    const VectorField3 f2 = catalog::quadratic_field([&] {
        std::uniform_real_distribution<double> c(-1.0, 1.0);
        catalog::QuadraticCoefficients k{};
        for (auto& row : k)
            for (auto& x : row) x = c(rng);
        return k;
    }());
    const double alpha = -0.7;
    VectorField3 sum{[&](Vec3 p) { return f1.eval(p) + alpha * f2.eval(p); }};
    sum.jacobian_analytic = [&](Vec3 p) {
        Mat3 j1 = f1.jacobian_analytic(p);
        const Mat3 j2 = f2.jacobian_analytic(p);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) j1[i][k] += alpha * j2[i][k];
        return j1;
    };
    const auto r1 = verify_curl_form(f1, span.surface, span.region, spec, 1e-6);
    const auto r2 = verify_curl_form(f2, span.surface, span.region, spec, 1e-6);
    const auto rs = verify_curl_form(sum, span.surface, span.region, spec, 1e-6);
    EXPECT_NEAR(rs.lhs->value, r1.lhs->value + alpha * r2.lhs->value, 1e-9);
    EXPECT_NEAR(rs.rhs->value, r1.rhs->value + alpha * r2.rhs->value, 1e-9);
}

TEST(StokesInvariants, FlatSurfaceReproducesGreen)
{
    const auto region = PlanarRegion::rectangle(-0.5, 1.0, 0.0, 2.0);
    const auto plane = catalog::flat(region);
    const VectorField2to3 g{[](Vec2 p) { return Vec3{std::sin(p.v) * p.u, p.u * p.u * p.v, 4.0}; }};
    const auto form = pullback(g, plane.surface);
    const auto general = verify_general(g, plane.surface, region, {}, 1e-6);
    const auto green = verify_green(form, region, {}, 1e-6);
    EXPECT_NEAR(general.lhs->value, green.lhs->value, 1e-10);
    EXPECT_NEAR(general.rhs->value, green.rhs->value, 1e-10);
    EXPECT_TRUE(general.pass);
    EXPECT_TRUE(green.pass);
}

TEST(StokesInvariants, FiniteDifferencePathsAgreeWithinLooserTolerance)
{
    const auto strip = catalog::moebius(0.9);
    const auto surface = strip.surface.without_analytic_partials();
    const auto report = verify_general(catalog::u_squared_field().without_analytic_partials(), surface, strip.region,
                                       {}, kFiniteDifferenceTolerance);
    EXPECT_TRUE(report.pass) << report.abs_diff;
    EXPECT_NEAR(report.lhs->value, -160.0 * 0.9 / 9.0, 1e-6);
}

TEST(StokesInvariants, DoublingPanelsIsStable)
{
    const auto strip = catalog::moebius(0.3);
    const auto g = compose_field(catalog::singular_field(), strip.surface);
    const QuadratureSpec base{};
    const QuadratureSpec doubled{8, 512, 256, 2};
    EXPECT_NEAR(stokes_general_lhs(g, strip.surface, strip.region, base).value,
                stokes_general_lhs(g, strip.surface, strip.region, doubled).value, 1e-10);
    EXPECT_NEAR(stokes_general_rhs(catalog::u_squared_field(), strip.surface, strip.region, base).value,
                stokes_general_rhs(catalog::u_squared_field(), strip.surface, strip.region, doubled).value, 1e-10);
}
