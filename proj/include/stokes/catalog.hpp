#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include "errors.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"
#include "stokes.hpp"
#include "vec.hpp"

namespace stokes::catalog {

inline constexpr double kPi = std::numbers::pi;

/// Default half-width of the strip.
inline constexpr double kDefaultDelta = 0.3;

/// A surface map together with the parameter region it is integrated over.
struct SurfacePatch {
    ParamSurface surface;
    PlanarRegion region;
};

/// Möbius map r(u,v) = ((1 + v cos(u/2)) cos u, (1 + v cos(u/2)) sin u, v sin(u/2)), unrestricted in (u, v).
inline Vec3 moebius_point(double u, double v)
{
    const double radius = 1.0 + v * std::cos(0.5 * u);
    return {radius * std::cos(u), radius * std::sin(u), v * std::sin(0.5 * u)};
}

inline std::pair<Vec3, Vec3> moebius_partials(double u, double v)
{
    const double c = std::cos(0.5 * u);
    const double s = std::sin(0.5 * u);
    const double radius = 1.0 + v * c;
    const double dradius = -0.5 * v * s;
    const Vec3 ru{dradius * std::cos(u) - radius * std::sin(u), dradius * std::sin(u) + radius * std::cos(u),
                  0.5 * v * c};
    const Vec3 rv{c * std::cos(u), c * std::sin(u), s};
    return {ru, rv};
}

/// Strip of radius 1 and half-width delta over [0, 2pi] x [-delta, delta].
inline SurfacePatch moebius(double delta)
{
    if (!(delta > 0.0)) throw ParameterError("Möbius half-width must be positive");
    auto region = PlanarRegion::rectangle(0.0, 2.0 * kPi, -delta, delta);
    ParamSurface surface([](Vec2 p) { return moebius_point(p.u, p.v); }, region,
                         [](Vec2 p) { return moebius_partials(p.u, p.v); });
    return {std::move(surface), std::move(region)};
}

/// Identity embedding (u, v) -> (u, v, 0) restricted to `region`.
inline SurfacePatch flat(const PlanarRegion& region)
{
    ParamSurface surface([](Vec2 p) { return Vec3{p.u, p.v, 0.0}; }, region,
                         [](Vec2) { return std::pair{Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}}; });
    return {std::move(surface), region};
}

/// F = (-y, x, 0) / (x^2 + y^2), defined off the z-axis, curl-free there.
inline VectorField3 singular_field()
{
    VectorField3 f;
    f.eval = [](Vec3 p) {
        const double rho2 = p.x * p.x + p.y * p.y;
        return Vec3{-p.y / rho2, p.x / rho2, 0.0};
    };
    f.jacobian_analytic = [](Vec3 p) {
        const double rho2 = p.x * p.x + p.y * p.y;
        const double rho4 = rho2 * rho2;
        const double xy = 2.0 * p.x * p.y / rho4;
        const double diff = (p.y * p.y - p.x * p.x) / rho4;
        return Mat3{{{xy, diff, 0.0}, {diff, -xy, 0.0}, {0.0, 0.0, 0.0}}};
    };
    f.curl_analytic = [](Vec3) { return Vec3{}; };
    f.guard = [](Vec3 p) { return p.x * p.x + p.y * p.y != 0.0; };
    return f;
}

/// F = A (x, y, z)^T.
inline VectorField3 linear_field(const Mat3& a)
{
    VectorField3 f;
    f.eval = [a](Vec3 p) { return a * p; };
    f.jacobian_analytic = [a](Vec3) { return a; };
    f.curl_analytic = [a](Vec3) { return curl_from_jacobian(a); };
    return f;
}

/// Coefficients of one component over the monomials 1, x, y, z, x^2, y^2, z^2, xy, xz, yz.
using QuadraticCoefficients = std::array<std::array<double, 10>, 3>;

/// Polynomial field of total degree at most two.
inline VectorField3 quadratic_field(const QuadraticCoefficients& c)
{
    auto component = [](const std::array<double, 10>& k, Vec3 p) {
        return k[0] + k[1] * p.x + k[2] * p.y + k[3] * p.z + k[4] * p.x * p.x + k[5] * p.y * p.y +
               k[6] * p.z * p.z + k[7] * p.x * p.y + k[8] * p.x * p.z + k[9] * p.y * p.z;
    };
    auto gradient = [](const std::array<double, 10>& k, Vec3 p) {
        return std::array<double, 3>{k[1] + 2.0 * k[4] * p.x + k[7] * p.y + k[8] * p.z,
                                     k[2] + 2.0 * k[5] * p.y + k[7] * p.x + k[9] * p.z,
                                     k[3] + 2.0 * k[6] * p.z + k[8] * p.x + k[9] * p.y};
    };
    VectorField3 f;
    f.eval = [c, component](Vec3 p) { return Vec3{component(c[0], p), component(c[1], p), component(c[2], p)}; };
    f.jacobian_analytic = [c, gradient](Vec3 p) { return Mat3{gradient(c[0], p), gradient(c[1], p), gradient(c[2], p)}; };
    f.curl_analytic = [c, gradient](Vec3 p) {
        return curl_from_jacobian(Mat3{gradient(c[0], p), gradient(c[1], p), gradient(c[2], p)});
    };
    return f;
}

/// G(u, v) = (u^2, 0, 0); it does not factor through the Möbius map.
inline VectorField2to3 u_squared_field()
{
    return {[](Vec2 p) { return Vec3{p.u * p.u, 0.0, 0.0}; },
            [](Vec2 p) { return std::pair{Vec3{2.0 * p.u, 0.0, 0.0}, Vec3{}}; }};
}

/// Parametrised space curve over [start, end].
struct SpaceCurve {
    std::function<Vec3(double)> point;
    std::function<Vec3(double)> tangent;
    double start{0.0};
    double end{0.0};
};

/// Boundary B of the strip: u -> r(u, delta) for u in [0, 4pi].
inline SpaceCurve boundary_curve_B(double delta)
{
    if (!(delta > 0.0) || !(delta < 1.0)) throw ParameterError("boundary curve B requires 0 < delta < 1");
    return {[delta](double u) { return moebius_point(u, delta); },
            [delta](double u) { return moebius_partials(u, delta).first; }, 0.0, 4.0 * kPi};
}

/// Integral of F(B(u)).B'(u) over [0, 4pi].
inline IntegralResult line_integral_over_B(const VectorField3& f, double delta, const QuadratureSpec& spec = {})
{
    const SpaceCurve b = boundary_curve_B(delta);
    return integrate_1d([&](double u) { return dot(f(b.point(u)), b.tangent(u)); }, b.start, b.end, spec);
}

/// Ruled surface of chords (1 - t) r(u, delta) + t r(2pi - u, delta) over [-pi, pi] x [0, 1].
/// Its boundary is the boundary B of the Möbius strip, and it is orientable.
inline SurfacePatch spanning_surface(double delta)
{
    if (!(delta > 0.0)) throw ParameterError("spanning surface half-width must be positive");
    auto region = PlanarRegion::rectangle(-kPi, kPi, 0.0, 1.0);
    ParamSurface surface(
        [delta](Vec2 p) {
            return (1.0 - p.v) * moebius_point(p.u, delta) + p.v * moebius_point(2.0 * kPi - p.u, delta);
        },
        region,
        [delta](Vec2 p) {
            const Vec3 near_u = moebius_partials(p.u, delta).first;
            const Vec3 far_u = moebius_partials(2.0 * kPi - p.u, delta).first;
            const Vec3 ru = (1.0 - p.v) * near_u - p.v * far_u;
            const Vec3 rt = moebius_point(2.0 * kPi - p.u, delta) - moebius_point(p.u, delta);
            return std::pair{ru, rt};
        });
    return {std::move(surface), std::move(region)};
}

} // namespace stokes::catalog
