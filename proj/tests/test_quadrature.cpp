#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stokes/quadrature.hpp"

using namespace stokes;
using std::numbers::pi;

TEST(GaussLegendre, IntegratesPolynomialsExactly)
{
    for (int n : {2, 3, 5, 8, 12}) {
        const GaussRule rule = gauss_legendre(n);
        for (int degree = 0; degree < 2 * n; ++degree) {
            double sum = 0.0;
            for (int k = 0; k < n; ++k) sum += rule.weights[k] * std::pow(rule.nodes[k], degree);
            const double exact = degree % 2 == 1 ? 0.0 : 2.0 / (degree + 1);
            EXPECT_NEAR(sum, exact, 1e-14) << "n=" << n << " degree=" << degree;
        }
    }
    EXPECT_THROW(gauss_legendre(1), ParameterError);
}

TEST(Integrate1d, ClosedFormExamples)
{
    EXPECT_NEAR(integrate_1d([](double) { return 1.0; }, 0.0, 2.0 * pi).value, 2.0 * pi, 1e-14);
    EXPECT_LE(std::abs(integrate_1d([](double x) { return std::sin(x); }, 0.0, 2.0 * pi).value), 1e-14);

    const double oracle = oracle::moebius_u_factor();
    EXPECT_NEAR(oracle, -80.0 / 9.0, 1e-13);
    const auto r = integrate_1d([](double u) { return 2.0 * u * std::cos(0.5 * u) * std::cos(u); }, 0.0, 2.0 * pi);
    EXPECT_NEAR(r.value, oracle, 1e-12);
    EXPECT_GE(r.error_estimate, 0.0);
    EXPECT_LT(r.error_estimate, 1e-12);
    EXPECT_EQ(r.evaluations, 8 * (256 + 128));
}

TEST(Integrate1d, NonFiniteValueReportsLocation)
{
    try {
        integrate_1d([](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; }, 0.0, 1.0);
        FAIL() << "expected EvaluationError";
    } catch (const EvaluationError& e) {
        EXPECT_NE(std::string(e.what()).find("non-finite"), std::string::npos);
    }
}

TEST(Integrate1d, RejectsBadSpec)
{
    auto f = [](double) { return 1.0; };
    EXPECT_THROW(integrate_1d(f, 1.0, 0.0), ParameterError);
    EXPECT_THROW(integrate_1d(f, 0.0, 1.0, QuadratureSpec{1, 10, 10, 2}), ParameterError);
    EXPECT_THROW(integrate_1d(f, 0.0, 1.0, QuadratureSpec{8, 0, 10, 2}), ParameterError);
}

TEST(Integrate1d, SinglePanelComparesAgainstRefinedRule)
{
    const auto r = integrate_1d([](double x) { return std::exp(x); }, 0.0, 1.0, QuadratureSpec{2, 1, 1, 2});
    EXPECT_GT(r.error_estimate, 0.0);
    EXPECT_NEAR(r.value, std::exp(1.0) - 1.0, 1e-2);
}

TEST(Integrate2d, ClosedFormExamples)
{
    const double delta = 0.3;
    const auto strip = PlanarRegion::rectangle(0.0, 2.0 * pi, -delta, delta);
    EXPECT_NEAR(integrate_2d([](Vec2) { return 1.0; }, strip).value, 4.0 * pi * delta, 1e-13);

    const auto r = integrate_2d([](Vec2 p) { return 2.0 * p.u * std::cos(0.5 * p.u) * std::cos(p.u); }, strip);
    EXPECT_NEAR(r.value, 2.0 * delta * oracle::moebius_u_factor(), 1e-12);
    EXPECT_NEAR(r.value, -16.0 / 3.0, 1e-12);

    const auto tri = PlanarRegion::type_i(0.0, 1.0, Profile::constant(0.0), Profile{[](double x) { return x; }});
    EXPECT_NEAR(integrate_2d([](Vec2) { return 1.0; }, tri).value, 0.5, 1e-14);
}

TEST(Integrate2d, TypeIIMapsInnerAxisOntoU)
{
    // {0 <= v <= 1, 0 <= u <= v}: integral of u is 1/6, of v is 1/3.
    const auto region =
        PlanarRegion::type_ii(0.0, 1.0, Profile::constant(0.0), Profile{[](double y) { return y; }});
    EXPECT_NEAR(integrate_2d([](Vec2 p) { return p.u; }, region).value, 1.0 / 6.0, 1e-14);
    EXPECT_NEAR(integrate_2d([](Vec2 p) { return p.v; }, region).value, 1.0 / 3.0, 1e-14);
}

TEST(Integrate2d, RectangleEqualsIteratedOneDimensional)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const QuadratureSpec spec{8, 128, 128, 2};
    for (int trial = 0; trial < 5; ++trial) {
        const double a = coef(rng), b = coef(rng), c = coef(rng);
        auto f = [=](Vec2 p) { return std::sin(a * p.u + b) * std::exp(c * p.v) + p.u * p.v * a; };
        const auto rect = PlanarRegion::rectangle(-1.0, 2.0, 0.5, 1.5);
        const double iterated = integrate_1d(
                                    [&](double u) {
                                        return integrate_1d([&](double v) { return f({u, v}); }, 0.5, 1.5, spec).value;
                                    },
                                    -1.0, 2.0, spec)
                                    .value;
        EXPECT_NEAR(integrate_2d(f, rect, spec).value, iterated, 1e-12);
    }
}

TEST(Integrate2d, ReproducibleBitForBit)
{
    auto f = [](Vec2 p) { return std::cos(p.u * p.v) + p.u; };
    const auto rect = PlanarRegion::rectangle(0.0, 3.0, -1.0, 1.0);
    const double first = integrate_2d(f, rect).value;
    for (int i = 0; i < 3; ++i) EXPECT_EQ(integrate_2d(f, rect).value, first);
}

TEST(IntegratePath, ZeroAndAreaForms)
{
    const auto square = boundary_path(PlanarRegion::rectangle(0.0, 1.0, 0.0, 1.0));
    EXPECT_EQ(integrate_path(PullbackOneForm::zero(), square).value, 0.0);
    const PullbackOneForm area{[](Vec2 p) { return -0.5 * p.v; }, [](Vec2 p) { return 0.5 * p.u; }};
    const auto r = integrate_path(area, square);
    EXPECT_NEAR(r.value, 1.0, 1e-15);
    EXPECT_EQ(r.evaluations, 4 * 8 * (256 + 128));
}
