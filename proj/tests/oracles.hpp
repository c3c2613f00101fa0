#pragma once

// Independent reference computations used only by the tests. Nothing here calls the
// library's quadrature or derivative code.

#include <cmath>
#include <functional>
#include <numbers>

#include "stokes/vec.hpp"

namespace oracle {

/// Midpoint rule with n cells on [a, b].
inline double midpoint_1d(const std::function<double(double)>& f, double a, double b, long n)
{
    const double h = (b - a) / n;
    double sum = 0.0;
    for (long i = 0; i < n; ++i) sum += f(a + (i + 0.5) * h);
    return sum * h;
}

/// Midpoint rule with n x n cells on [a, b] x [c, d].
inline double midpoint_2d(const std::function<double(stokes::Vec2)>& f, double a, double b, double c, double d, long n)
{
    const double hu = (b - a) / n;
    const double hv = (d - c) / n;
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
        double row = 0.0;
        for (long j = 0; j < n; ++j) row += f({a + (i + 0.5) * hu, c + (j + 0.5) * hv});
        sum += row;
    }
    return sum * hu * hv;
}

/// Midpoint rule over {a <= x <= b, g1(x) <= y <= g2(x)} with n x n cells in mapped coordinates.
inline double midpoint_type_i(const std::function<double(stokes::Vec2)>& f, double a, double b,
                              const std::function<double(double)>& g1, const std::function<double(double)>& g2,
                              long n)
{
    const double hx = (b - a) / n;
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
        const double x = a + (i + 0.5) * hx;
        const double lo = g1(x);
        const double hy = (g2(x) - lo) / n;
        double col = 0.0;
        for (long j = 0; j < n; ++j) col += f({x, lo + (j + 0.5) * hy});
        sum += col * hy;
    }
    return sum * hx;
}

/// Closed form of the integral of u cos(k u) over [0, L].
inline double u_cos_integral(double k, double L)
{
    return L * std::sin(k * L) / k + (std::cos(k * L) - 1.0) / (k * k);
}

/// Integral of 2u cos(u/2) cos u over [0, 2pi], via cos(u/2)cos u = (cos(3u/2) + cos(u/2)) / 2.
inline double moebius_u_factor()
{
    const double L = 2.0 * std::numbers::pi;
    return u_cos_integral(1.5, L) + u_cos_integral(0.5, L);
}

/// Point on the strip boundary, (1 + d cos(u/2)) (cos u, sin u) + d sin(u/2) e_z.
inline stokes::Vec3 strip_edge(double u, double delta)
{
    const double radius = 1.0 + delta * std::cos(u / 2.0);
    return {radius * std::cos(u), radius * std::sin(u), delta * std::sin(u / 2.0)};
}

/// Line integral of F around the strip boundary over [0, 4 pi]. Midpoint samples with a
/// central-difference tangent; the integrand is smooth and periodic so the rule converges fast.
inline double edge_line_integral(const std::function<stokes::Vec3(stokes::Vec3)>& f, double delta, long n)
{
    const double h = 1e-5;
    return midpoint_1d(
        [&](double u) {
            const stokes::Vec3 t = (strip_edge(u + h, delta) - strip_edge(u - h, delta)) / (2.0 * h);
            return stokes::dot(f(strip_edge(u, delta)), t);
        },
        0.0, 4.0 * std::numbers::pi, n);
}

/// Central-difference curl with an explicit step, independent of the library's finite differences.
inline stokes::Vec3 fd_curl(const std::function<stokes::Vec3(stokes::Vec3)>& f, stokes::Vec3 x, double h)
{
    using stokes::Vec3;
    auto d = [&](Vec3 e) { return (f(x + e) - f(x - e)) / (2.0 * h); };
    const Vec3 dx = d({h, 0, 0});
    const Vec3 dy = d({0, h, 0});
    const Vec3 dz = d({0, 0, h});
    return {dy.z - dz.y, dz.x - dx.z, dx.y - dy.x};
}

} // namespace oracle
