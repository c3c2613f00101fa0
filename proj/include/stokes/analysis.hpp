#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "catalog.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "vec.hpp"

namespace stokes::analysis {

/// Two distinct parameter points with (numerically) the same image.
struct IntersectionWitness {
    Vec2 p1;
    Vec2 p2;
    Vec3 image;
    double residual{0.0};  ///< |r(p1) - r(p2)|
};

/// minus: u1 = u, u2 = u + pi, image (-1, -tan u, -tan u).
/// plus:  u1 = 2pi - u, u2 = pi - u, image (-1, tan u, tan u).
/// edge:  (0, v) and (2pi, -v), image (1 + v, 0, 0); the argument is v.
enum class WitnessBranch { minus, plus, edge };

/// Closed-form self-intersection of the Möbius strip of half-width delta.
inline IntersectionWitness closed_form_witness(double delta, double arg, WitnessBranch branch)
{
    using catalog::kPi;
    if (!(delta > 0.0)) throw ParameterError("half-width must be positive");
    if (branch == WitnessBranch::edge) {
        if (std::abs(arg) > delta) throw ParameterError("edge witness requires |v| <= delta");
        const Vec2 p1{0.0, arg};
        const Vec2 p2{2.0 * kPi, -arg};
        const Vec3 r1 = catalog::moebius_point(p1.u, p1.v);
        return {p1, p2, Vec3{1.0 + arg, 0.0, 0.0}, norm(r1 - catalog::moebius_point(p2.u, p2.v))};
    }

    const double u = arg;
    if (!(u > 0.0)) throw ParameterError("witness requires u > 0");
    const double sign = branch == WitnessBranch::minus ? -1.0 : 1.0;
    const double v1 = sign * 2.0 * std::cos(0.5 * u) / std::cos(u);
    const double v2 = sign * 2.0 * std::sin(0.5 * u) / std::cos(u);
    if (std::abs(v1) > delta || std::abs(v2) > delta)
        throw ParameterError("u too large for this half-width: |v| exceeds delta");

    const Vec2 p1 = branch == WitnessBranch::minus ? Vec2{u, v1} : Vec2{2.0 * kPi - u, v1};
    const Vec2 p2 = branch == WitnessBranch::minus ? Vec2{u + kPi, v2} : Vec2{kPi - u, v2};
    const double t = sign * std::tan(u);
    const Vec3 r1 = catalog::moebius_point(p1.u, p1.v);
    const Vec3 r2 = catalog::moebius_point(p2.u, p2.v);
    return {p1, p2, Vec3{-1.0, t, t}, norm(r1 - r2)};
}

namespace detail {

using Vec4 = std::array<double, 4>;

/// Solves the 3x3 system m x = b by cofactors; nullopt when singular.
inline std::optional<Vec3> solve3(const Mat3& m, Vec3 b)
{
    const Vec3 c0{m[0][0], m[1][0], m[2][0]};
    const Vec3 c1{m[0][1], m[1][1], m[2][1]};
    const Vec3 c2{m[0][2], m[1][2], m[2][2]};
    const double det = dot(c0, cross(c1, c2));
    if (std::abs(det) < 1e-300) return std::nullopt;
    return Vec3{dot(b, cross(c1, c2)) / det, dot(c0, cross(b, c2)) / det, dot(c0, cross(c1, b)) / det};
}

inline std::pair<Vec2, Vec2> clamp_pair(const Vec4& x, Vec2 lo, Vec2 hi)
{
    return {{std::clamp(x[0], lo.u, hi.u), std::clamp(x[1], lo.v, hi.v)},
            {std::clamp(x[2], lo.u, hi.u), std::clamp(x[3], lo.v, hi.v)}};
}

/// Damped minimum-norm Gauss-Newton on e(x) = r(p1) - r(p2), clamped to the bounding box.
inline std::optional<IntersectionWitness> refine_pair(const ParamSurface& s, Vec2 p1, Vec2 p2, Vec2 lo, Vec2 hi,
                                                      double tol)
{
    constexpr int kMaxIterations = 50;
    Vec3 e = s(p1) - s(p2);
    double res = norm(e);
    for (int iter = 0; iter < kMaxIterations && res > 1e-15; ++iter) {
        const auto [ru1, rv1] = partials(s, p1);
        const auto [ru2, rv2] = partials(s, p2);
        const std::array<Vec3, 4> cols{ru1, rv1, -ru2, -rv2};
        Mat3 jjt{};
        for (const Vec3& c : cols) {
            const std::array<double, 3> cv{c.x, c.y, c.z};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) jjt[i][j] += cv[i] * cv[j];
        }
        const double lambda = 1e-12 * (jjt[0][0] + jjt[1][1] + jjt[2][2]);
        for (int i = 0; i < 3; ++i) jjt[i][i] += lambda;
        const auto y = solve3(jjt, e);
        if (!y) return std::nullopt;
        Vec4 step{};
        for (int k = 0; k < 4; ++k) step[k] = -dot(cols[k], *y);

        double scale = 1.0;
        bool improved = false;
        for (int halving = 0; halving < 20; ++halving, scale *= 0.5) {
            const Vec4 trial{p1.u + scale * step[0], p1.v + scale * step[1], p2.u + scale * step[2],
                             p2.v + scale * step[3]};
            const auto [q1, q2] = clamp_pair(trial, lo, hi);
            const Vec3 e_new = s(q1) - s(q2);
            if (norm(e_new) < res) {
                p1 = q1;
                p2 = q2;
                e = e_new;
                res = norm(e_new);
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (res > tol) return std::nullopt;
    return IntersectionWitness{p1, p2, 0.5 * (s(p1) + s(p2)), res};
}

inline bool lex_less(Vec2 a, Vec2 b) { return a.u < b.u || (a.u == b.u && a.v < b.v); }

} // namespace detail

/// Numerical self-intersection search.
///
/// Samples a grid x grid lattice of cell centres over the region, pairs samples whose parameters
/// are at least 0.05 * diam(D) apart but whose images lie within one image-space cell, and refines
/// each pair by Gauss-Newton. Witnesses are returned with p1 < p2 lexicographically, deduplicated,
/// and sorted by p1. With `include_boundary` false, witnesses touching the region's edge are dropped.
inline std::vector<IntersectionWitness> find_self_intersections(const ParamSurface& s, const PlanarRegion& d,
                                                                int grid, double tol, bool include_boundary = true)
{
    if (grid < 8) throw ParameterError("self-intersection scan needs grid >= 8");
    const auto [lo, hi] = d.bounding_box();
    const double du = (hi.u - lo.u) / grid;
    const double dv = (hi.v - lo.v) / grid;
    const double separation = 0.05 * d.diameter();

    std::vector<Vec2> params;
    std::vector<Vec3> images;
    double cell = 0.0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const Vec2 p{lo.u + (i + 0.5) * du, lo.v + (j + 0.5) * dv};
            if (!d.contains(p)) continue;
            params.push_back(p);
            images.push_back(s(p));
            const auto [ru, rv] = partials(s, p);
            cell = std::max(cell, norm(ru) * du + norm(rv) * dv);
        }
    }

    std::vector<IntersectionWitness> found;
    const double dedup = 0.25 * std::min(du, dv);
    const double edge_margin = 1e-9 * d.diameter();
    auto duplicate = [&](const IntersectionWitness& w) {
        return std::any_of(found.begin(), found.end(), [&](const IntersectionWitness& o) {
            return norm(o.p1 - w.p1) <= dedup && norm(o.p2 - w.p2) <= dedup;
        });
    };

    for (std::size_t i = 0; i < params.size(); ++i) {
        for (std::size_t j = i + 1; j < params.size(); ++j) {
            if (norm(params[i] - params[j]) < separation) continue;
            if (norm(images[i] - images[j]) > cell) continue;
            auto w = detail::refine_pair(s, params[i], params[j], lo, hi, tol);
            if (!w) continue;
            if (norm(w->p1 - w->p2) < separation) continue;
            if (!d.contains(w->p1) || !d.contains(w->p2)) continue;
            if (!include_boundary && (!d.contains(w->p1, -edge_margin) || !d.contains(w->p2, -edge_margin)))
                continue;
            if (detail::lex_less(w->p2, w->p1)) std::swap(w->p1, w->p2);
            if (!duplicate(*w)) found.push_back(*w);
        }
    }
    std::sort(found.begin(), found.end(), [](const IntersectionWitness& a, const IntersectionWitness& b) {
        return detail::lex_less(a.p1, b.p1) || (a.p1 == b.p1 && detail::lex_less(a.p2, b.p2));
    });
    return found;
}

/// A point where the spanning surface meets the z-axis, with its (u, t) preimage.
struct AxisCrossing {
    Vec2 preimage;
    Vec3 point;
};

/// Roots of x(u,t) = y(u,t) = 0 on the spanning surface of half-width delta, by Newton's method
/// seeded on a 32 x 32 lattice. Images closer than 1e-4 are merged; results are sorted by descending z.
inline std::vector<AxisCrossing> z_axis_crossings(double delta, double tol)
{
    if (!(delta > 0.0) || !(delta < 1.0)) throw ParameterError("z-axis search requires 0 < delta < 1");
    constexpr int kSeeds = 32;
    constexpr double kMergeRadius = 1e-4;
    const auto patch = catalog::spanning_surface(delta);
    const auto [lo, hi] = patch.region.bounding_box();

    std::vector<AxisCrossing> out;
    for (int i = 0; i <= kSeeds; ++i) {
        for (int j = 0; j <= kSeeds; ++j) {
            Vec2 p{lo.u + (hi.u - lo.u) * i / kSeeds, lo.v + (hi.v - lo.v) * j / kSeeds};
            bool ok = false;
            for (int iter = 0; iter < 50; ++iter) {
                const Vec3 r = patch.surface(p);
                if (std::abs(r.x) <= 1e-15 && std::abs(r.y) <= 1e-15) {
                    ok = true;
                    break;
                }
                const auto [ru, rt] = partials(patch.surface, p);
                const double det = ru.x * rt.y - rt.x * ru.y;
                if (std::abs(det) < 1e-14) break;
                const Vec2 step{(r.x * rt.y - rt.x * r.y) / det, (ru.x * r.y - r.x * ru.y) / det};
                p = {std::clamp(p.u - step.u, lo.u, hi.u), std::clamp(p.v - step.v, lo.v, hi.v)};
                if (norm(step) < 1e-16) {
                    ok = true;
                    break;
                }
            }
            if (!ok) continue;
            const Vec3 r = patch.surface(p);
            if (std::abs(r.x) > tol || std::abs(r.y) > tol) continue;
            const bool seen = std::any_of(out.begin(), out.end(),
                                          [&](const AxisCrossing& c) { return norm(c.point - r) <= kMergeRadius; });
            if (!seen) out.push_back({p, r});
        }
    }
    std::sort(out.begin(), out.end(), [](const AxisCrossing& a, const AxisCrossing& b) { return a.point.z > b.point.z; });
    return out;
}

inline std::vector<Vec3> z_axis_intersections(double delta, double tol)
{
    std::vector<Vec3> points;
    for (const auto& c : z_axis_crossings(delta, tol)) points.push_back(c.point);
    return points;
}

struct OrientabilityReport {
    std::vector<Vec2> degenerate_points;
    double min_interior_norm{std::numeric_limits<double>::infinity()};
};

/// Evaluates |r_u x r_v| on the (grid + 1)^2 lattice of the region's bounding box.
/// The minimum is taken over interior nodes; edge nodes are visited only with `include_edges`.
/// A nonvanishing normal on one chart is necessary for orientability, not sufficient.
inline OrientabilityReport orientability_probe(const ParamSurface& s, const PlanarRegion& d, int grid,
                                               bool include_edges = false)
{
    if (grid < 8) throw ParameterError("orientability probe needs grid >= 8");
    const auto [lo, hi] = d.bounding_box();
    OrientabilityReport report;
    for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= grid; ++j) {
            const bool edge = i == 0 || j == 0 || i == grid || j == grid;
            if (edge && !include_edges) continue;
            const Vec2 p{lo.u + (hi.u - lo.u) * i / grid, lo.v + (hi.v - lo.v) * j / grid};
            if (!d.contains(p)) continue;
            const auto [ru, rv] = partials(s, p);
            const double n = norm(cross(ru, rv));
            if (!edge) report.min_interior_norm = std::min(report.min_interior_norm, n);
            if (n <= kNormalDegeneracy) report.degenerate_points.push_back(p);
        }
    }
    return report;
}

} // namespace stokes::analysis
