#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vec.hpp"

namespace stokes {

/// Half-width of the open neighbourhood U around D on which surface maps must be evaluable.
inline constexpr double kDefaultDomainPadding = 1e-3;

/// |r_u x r_v| at or below this value is reported as a degenerate normal.
inline constexpr double kNormalDegeneracy = 1e-9;

/// Relative step used by every first-order central difference in the library.
inline double fd_step(double scale) { return std::max(1e-6, 1e-6 * std::abs(scale)); }

/// Continuously differentiable scalar profile y = g(x) bounding a simple region.
/// When no slope is supplied it is estimated by central differences kept inside [lo, hi].
struct Profile {
    std::function<double(double)> value;
    std::function<double(double)> slope{};

    double slope_at(double x, double lo, double hi) const
    {
        if (slope) return slope(x);
        const double h = fd_step(x);
        const double x0 = std::max(lo, x - h);
        const double x1 = std::min(hi, x + h);
        return (value(x1) - value(x0)) / (x1 - x0);
    }

    static Profile constant(double c)
    {
        return {[c](double) { return c; }, [](double) { return 0.0; }};
    }
};

/// Simple planar region: a rectangle, {a<=u<=b, g1(u)<=v<=g2(u)} (type I)
/// or {a<=v<=b, g1(v)<=u<=g2(v)} (type II).
class PlanarRegion {
public:
    enum class Kind { rectangle, type_i, type_ii };

    static PlanarRegion rectangle(double a, double b, double c, double d)
    {
        if (!(a < b) || !(c < d)) throw ParameterError("rectangle requires a < b and c < d");
        return PlanarRegion(Kind::rectangle, a, b, Profile::constant(c), Profile::constant(d));
    }

    static PlanarRegion type_i(double a, double b, Profile lower, Profile upper)
    {
        return PlanarRegion(Kind::type_i, a, b, std::move(lower), std::move(upper));
    }

    static PlanarRegion type_ii(double a, double b, Profile lower, Profile upper)
    {
        return PlanarRegion(Kind::type_ii, a, b, std::move(lower), std::move(upper));
    }

    Kind kind() const { return kind_; }

    /// Range of the outer coordinate (u for rectangles and type I, v for type II).
    double a() const { return a_; }
    double b() const { return b_; }
    const Profile& lower() const { return lower_; }
    const Profile& upper() const { return upper_; }

    /// Maps (outer, inner) coordinates to a (u, v) point.
    Vec2 point(double outer, double inner) const
    {
        return kind_ == Kind::type_ii ? Vec2{inner, outer} : Vec2{outer, inner};
    }

    /// Membership in D inflated by `pad` (profile bounds are inflated along the inner axis).
    bool contains(Vec2 p, double pad = 0.0) const
    {
        const double outer = kind_ == Kind::type_ii ? p.v : p.u;
        const double inner = kind_ == Kind::type_ii ? p.u : p.v;
        if (outer < a_ - pad || outer > b_ + pad) return false;
        const double t = std::clamp(outer, a_, b_);
        return inner >= lower_.value(t) - pad && inner <= upper_.value(t) + pad;
    }

    /// Axis-aligned bounding box (min corner, max corner), sampled for profile regions.
    std::pair<Vec2, Vec2> bounding_box() const
    {
        double lo = lower_.value(a_);
        double hi = upper_.value(a_);
        for (int i = 1; i <= kProfileSamples; ++i) {
            const double t = a_ + (b_ - a_) * i / kProfileSamples;
            lo = std::min(lo, lower_.value(t));
            hi = std::max(hi, upper_.value(t));
        }
        if (kind_ == Kind::type_ii) return {{lo, a_}, {hi, b_}};
        return {{a_, lo}, {b_, hi}};
    }

    double diameter() const
    {
        const auto [lo, hi] = bounding_box();
        return norm(hi - lo);
    }

private:
    static constexpr int kProfileSamples = 256;

    PlanarRegion(Kind kind, double a, double b, Profile lower, Profile upper)
        : kind_(kind)
        , a_(a)
        , b_(b)
        , lower_(std::move(lower))
        , upper_(std::move(upper))
    {
        if (!(a_ < b_)) throw ParameterError("region requires a < b");
        if (!lower_.value || !upper_.value) throw ParameterError("region profiles must be callable");
        bool has_width = false;
        for (int i = 0; i <= kProfileSamples; ++i) {
            const double t = a_ + (b_ - a_) * i / kProfileSamples;
            const double gap = upper_.value(t) - lower_.value(t);
            if (!std::isfinite(gap) || gap < 0.0) throw ParameterError("region requires g1 <= g2 on [a, b]");
            has_width = has_width || gap > 0.0;
        }
        if (!has_width) throw ParameterError("region has zero area");
    }

    Kind kind_;
    double a_;
    double b_;
    Profile lower_;
    Profile upper_;
};

/// One C1 piece of a boundary path, parametrised over t in [0, 1].
struct PathSegment {
    std::function<Vec2(double)> point;
    std::function<Vec2(double)> tangent;

    Vec2 start() const { return point(0.0); }
    Vec2 end() const { return point(1.0); }

    static PathSegment line(Vec2 from, Vec2 to)
    {
        const Vec2 d = to - from;
        return {[from, d](double t) { return from + t * d; }, [d](double) { return d; }};
    }
};

/// Counterclockwise, piecewise-C1 closed path bounding a simple region.
struct BoundaryPath {
    std::vector<PathSegment> segments;

    bool is_closed(double tol) const
    {
        for (std::size_t i = 0; i < segments.size(); ++i) {
            const auto& next = segments[(i + 1) % segments.size()];
            if (norm(segments[i].end() - next.start()) > tol) return false;
        }
        return !segments.empty();
    }
};

/// Positively oriented boundary of `region`. Rectangles yield bottom, right, top, left.
inline BoundaryPath boundary_path(const PlanarRegion& region)
{
    const double a = region.a();
    const double b = region.b();
    if (region.kind() == PlanarRegion::Kind::rectangle) {
        const double c = region.lower().value(a);
        const double d = region.upper().value(a);
        return {{PathSegment::line({a, c}, {b, c}), PathSegment::line({b, c}, {b, d}),
                 PathSegment::line({b, d}, {a, d}), PathSegment::line({a, d}, {a, c})}};
    }

    // Profile curve traversed with the outer coordinate running from `from` to `to`. The outer
    // coordinate follows s(t) = from + span (1 - cos(pi t)) / 2, whose vanishing speed at both ends
    // keeps the integrand smooth for profiles with unbounded slope there (e.g. circular arcs).
    auto along = [&region, a, b](const Profile& g, double from, double to) {
        const double span = to - from;
        const bool swap = region.kind() == PlanarRegion::Kind::type_ii;
        auto outer = [from, span](double t) { return from + 0.5 * span * (1.0 - std::cos(std::numbers::pi * t)); };
        auto speed = [span](double t) { return 0.5 * std::numbers::pi * span * std::sin(std::numbers::pi * t); };
        auto pt = [g, outer, swap](double t) {
            const double s = outer(t);
            const double y = g.value(s);
            return swap ? Vec2{y, s} : Vec2{s, y};
        };
        auto tan = [g, outer, speed, swap, a, b](double t) {
            const double s = outer(t);
            const double ds = speed(t);
            const double dy = ds == 0.0 ? 0.0 : g.slope_at(s, a, b) * ds;
            return swap ? Vec2{dy, ds} : Vec2{ds, dy};
        };
        return PathSegment{pt, tan};
    };

    const Vec2 low_b = region.point(b, region.lower().value(b));
    const Vec2 up_b = region.point(b, region.upper().value(b));
    const Vec2 up_a = region.point(a, region.upper().value(a));
    const Vec2 low_a = region.point(a, region.lower().value(a));

    if (region.kind() == PlanarRegion::Kind::type_i) {
        return {{along(region.lower(), a, b), PathSegment::line(low_b, up_b), along(region.upper(), b, a),
                 PathSegment::line(up_a, low_a)}};
    }
    // Type II: the outer axis is v, so the counterclockwise order starts along v = a
    // from u = g1(a) to u = g2(a), then climbs the upper profile u = g2(v).
    return {{PathSegment::line(low_a, up_a), along(region.upper(), a, b), PathSegment::line(up_b, low_b),
             along(region.lower(), b, a)}};
}

/// Twice continuously differentiable map r: U -> R^3, with U the region inflated by the padding.
class ParamSurface {
public:
    using Map = std::function<Vec3(Vec2)>;
    using PartialsMap = std::function<std::pair<Vec3, Vec3>(Vec2)>;

    /// A surface without a region is evaluable on the whole plane.
    explicit ParamSurface(Map map, std::optional<PlanarRegion> region = std::nullopt, PartialsMap partials = {},
                          double padding = kDefaultDomainPadding)
        : map_(std::move(map))
        , partials_(std::move(partials))
        , region_(std::move(region))
        , padding_(padding)
    {
        if (!map_) throw ParameterError("surface map must be callable");
        if (!(padding_ > 0.0)) throw ParameterError("domain padding must be positive");
    }

    bool in_domain(Vec2 p) const { return is_finite(p) && (!region_ || region_->contains(p, padding_)); }

    Vec3 operator()(Vec2 p) const
    {
        if (!in_domain(p)) throw DomainError("surface evaluated outside its padded domain", p);
        return map_(p);
    }

    bool has_analytic_partials() const { return static_cast<bool>(partials_); }

    /// Analytic partials; only valid when has_analytic_partials().
    std::pair<Vec3, Vec3> analytic_partials(Vec2 p) const
    {
        if (!in_domain(p)) throw DomainError("surface partials requested outside its padded domain", p);
        return partials_(p);
    }

    const std::optional<PlanarRegion>& region() const { return region_; }
    double padding() const { return padding_; }

    /// Same map and domain without the analytic partials (forces finite differences).
    ParamSurface without_analytic_partials() const { return ParamSurface(map_, region_, {}, padding_); }

private:
    Map map_;
    PartialsMap partials_;
    std::optional<PlanarRegion> region_;
    double padding_;
};

inline Vec3 eval_surface(const ParamSurface& s, Vec2 p) { return s(p); }

/// Central-difference (r_u, r_v) with an explicit step.
inline std::pair<Vec3, Vec3> partials_fd(const ParamSurface& s, Vec2 p, double h)
{
    const Vec3 ru = (s({p.u + h, p.v}) - s({p.u - h, p.v})) / (2.0 * h);
    const Vec3 rv = (s({p.u, p.v + h}) - s({p.u, p.v - h})) / (2.0 * h);
    return {ru, rv};
}

/// (r_u, r_v): analytic when supplied, otherwise central differences.
inline std::pair<Vec3, Vec3> partials(const ParamSurface& s, Vec2 p)
{
    if (s.has_analytic_partials()) return s.analytic_partials(p);
    return partials_fd(s, p, fd_step(std::max(std::abs(p.u), std::abs(p.v))));
}

/// |d/dv r_u - d/du r_v| estimated by central differences of the partials with step h.
inline double mixed_partial_gap(const ParamSurface& s, Vec2 p, double h)
{
    const Vec3 ru_v = (partials(s, {p.u, p.v + h}).first - partials(s, {p.u, p.v - h}).first) / (2.0 * h);
    const Vec3 rv_u = (partials(s, {p.u + h, p.v}).second - partials(s, {p.u - h, p.v}).second) / (2.0 * h);
    return norm(ru_v - rv_u);
}

/// Unit normal (r_u x r_v)/|r_u x r_v|, or nullopt where the cross product is degenerate.
inline std::optional<Vec3> normal_field(const ParamSurface& s, Vec2 p)
{
    const auto [ru, rv] = partials(s, p);
    const Vec3 c = cross(ru, rv);
    const double len = norm(c);
    if (len <= kNormalDegeneracy) return std::nullopt;
    return c / len;
}

} // namespace stokes
