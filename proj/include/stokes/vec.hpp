#pragma once

#include <array>
#include <cmath>
#include <ostream>

namespace stokes {

/// Point or vector in the (u, v) parameter plane.
struct Vec2 {
    double u{0.0};
    double v{0.0};

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.u + b.u, a.v + b.v}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.u - b.u, a.v - b.v}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.u, s * a.v}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

/// Point or vector in image space.
struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
    friend constexpr bool operator==(Vec3, Vec3) = default;
};

/// Row-major 3x3 matrix; m[i][j] is row i, column j.
using Mat3 = std::array<std::array<double, 3>, 3>;

constexpr double dot(Vec2 a, Vec2 b) { return a.u * b.u + a.v * b.v; }
constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec2 a) { return std::hypot(a.u, a.v); }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

inline bool is_finite(Vec2 a) { return std::isfinite(a.u) && std::isfinite(a.v); }
inline bool is_finite(Vec3 a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

constexpr Vec3 operator*(const Mat3& m, Vec3 a)
{
    return {m[0][0] * a.x + m[0][1] * a.y + m[0][2] * a.z,
            m[1][0] * a.x + m[1][1] * a.y + m[1][2] * a.z,
            m[2][0] * a.x + m[2][1] * a.y + m[2][2] * a.z};
}

/// Curl of a field whose Jacobian is `jac` (jac[i][j] = dF_i/dx_j).
constexpr Vec3 curl_from_jacobian(const Mat3& jac)
{
    return {jac[2][1] - jac[1][2], jac[0][2] - jac[2][0], jac[1][0] - jac[0][1]};
}

inline std::ostream& operator<<(std::ostream& os, Vec2 a) { return os << '(' << a.u << ", " << a.v << ')'; }
inline std::ostream& operator<<(std::ostream& os, Vec3 a)
{
    return os << '(' << a.x << ", " << a.y << ", " << a.z << ')';
}

} // namespace stokes
