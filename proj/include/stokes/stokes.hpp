#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"
#include "vec.hpp"

namespace stokes {

/// Default verification tolerances: analytic derivatives throughout vs. any finite-difference path.
inline constexpr double kAnalyticTolerance = 1e-8;
inline constexpr double kFiniteDifferenceTolerance = 1e-6;

/// Continuously differentiable field F on (a subset of) image space.
/// `guard` marks where F is defined; evaluating elsewhere raises FieldDomainError.
struct VectorField3 {
    std::function<Vec3(Vec3)> eval;
    std::function<Vec3(Vec3)> curl_analytic{};
    std::function<Mat3(Vec3)> jacobian_analytic{};
    std::function<bool(Vec3)> guard{};

    bool defined_at(Vec3 x) const { return !guard || guard(x); }

    Vec3 operator()(Vec3 x) const
    {
        if (!defined_at(x)) throw FieldDomainError(x);
        return eval(x);
    }

    /// Same field with derivatives left to finite differences.
    VectorField3 without_analytic_derivatives() const { return {eval, {}, {}, guard}; }
};

/// Field G on the parameter plane; it need not factor through the surface map.
struct VectorField2to3 {
    using Partials = std::function<std::pair<Vec3, Vec3>(Vec2)>;

    std::function<Vec3(Vec2)> eval;
    Partials partials_analytic{};

    Vec3 operator()(Vec2 p) const { return eval(p); }

    VectorField2to3 without_analytic_partials() const { return {eval, {}}; }
};

/// (G_u, G_v): analytic when supplied, otherwise central differences.
inline std::pair<Vec3, Vec3> field_partials(const VectorField2to3& g, Vec2 p)
{
    if (g.partials_analytic) return g.partials_analytic(p);
    const double h = fd_step(std::max(std::abs(p.u), std::abs(p.v)));
    const Vec3 gu = (g({p.u + h, p.v}) - g({p.u - h, p.v})) / (2.0 * h);
    const Vec3 gv = (g({p.u, p.v + h}) - g({p.u, p.v - h})) / (2.0 * h);
    return {gu, gv};
}

/// Jacobian dF_i/dx_j: analytic when supplied, otherwise central differences (guard checked at every stencil point).
inline Mat3 jacobian(const VectorField3& f, Vec3 x)
{
    if (f.jacobian_analytic) {
        if (!f.defined_at(x)) throw FieldDomainError(x);
        return f.jacobian_analytic(x);
    }
    const double h = fd_step(std::max({std::abs(x.x), std::abs(x.y), std::abs(x.z)}));
    Mat3 jac{};
    for (int j = 0; j < 3; ++j) {
        Vec3 e{};
        (j == 0 ? e.x : j == 1 ? e.y : e.z) = h;
        const Vec3 d = (f(x + e) - f(x - e)) / (2.0 * h);
        jac[0][j] = d.x;
        jac[1][j] = d.y;
        jac[2][j] = d.z;
    }
    return jac;
}

/// Curl of F at x: analytic when supplied, otherwise from the Jacobian.
inline Vec3 curl(const VectorField3& f, Vec3 x)
{
    if (f.curl_analytic) {
        if (!f.defined_at(x)) throw FieldDomainError(x);
        return f.curl_analytic(x);
    }
    return curl_from_jacobian(jacobian(f, x));
}

/// One-form P du + Q dv with P = G.r_u and Q = G.r_v.
inline PullbackOneForm pullback(const VectorField2to3& g, const ParamSurface& s)
{
    return {[g, s](Vec2 p) { return dot(g(p), partials(s, p).first); },
            [g, s](Vec2 p) { return dot(g(p), partials(s, p).second); }};
}

/// G = F o r. Partials follow the chain rule when both F's Jacobian and r's partials are analytic.
inline VectorField2to3 compose_field(const VectorField3& f, const ParamSurface& s)
{
    VectorField2to3 g{[f, s](Vec2 p) { return f(s(p)); }};
    if (f.jacobian_analytic && s.has_analytic_partials()) {
        g.partials_analytic = [f, s](Vec2 p) {
            const Mat3 jac = jacobian(f, s(p));
            const auto [ru, rv] = s.analytic_partials(p);
            return std::pair{jac * ru, jac * rv};
        };
    }
    return g;
}

/// G_u.r_v - G_v.r_u at p, the integrand of the generalized form.
inline double general_integrand(const VectorField2to3& g, const ParamSurface& s, Vec2 p)
{
    const auto [gu, gv] = field_partials(g, p);
    const auto [ru, rv] = partials(s, p);
    return dot(gu, rv) - dot(gv, ru);
}

/// (curl F)(r(p)).(r_u x r_v), the integrand of the curl form.
inline double curl_integrand(const VectorField3& f, const ParamSurface& s, Vec2 p)
{
    const auto [ru, rv] = partials(s, p);
    return dot(curl(f, s(p)), cross(ru, rv));
}

/// Line integral of P du + Q dv around the positively oriented boundary of d.
inline IntegralResult greens_lhs(const PullbackOneForm& form, const PlanarRegion& d, const QuadratureSpec& spec = {})
{
    return integrate_path(form, boundary_path(d), spec);
}

/// Double integral of Q_u - P_v over d; derivatives not carried by the form come from central differences.
inline IntegralResult greens_rhs(const PullbackOneForm& form, const PlanarRegion& d, const QuadratureSpec& spec = {})
{
    auto density = [&form](Vec2 p) {
        const double h = fd_step(std::max(std::abs(p.u), std::abs(p.v)));
        const double qu =
            form.dQ_du ? form.dQ_du(p) : (form.Q({p.u + h, p.v}) - form.Q({p.u - h, p.v})) / (2.0 * h);
        const double pv =
            form.dP_dv ? form.dP_dv(p) : (form.P({p.u, p.v + h}) - form.P({p.u, p.v - h})) / (2.0 * h);
        return qu - pv;
    };
    return integrate_2d(density, d, spec);
}

/// Closed line integral of G.dr over C = r(boundary of d), defined through the pullback.
inline IntegralResult stokes_general_lhs(const VectorField2to3& g, const ParamSurface& s, const PlanarRegion& d,
                                         const QuadratureSpec& spec = {})
{
    return integrate_path(pullback(g, s), boundary_path(d), spec);
}

inline IntegralResult stokes_general_rhs(const VectorField2to3& g, const ParamSurface& s, const PlanarRegion& d,
                                         const QuadratureSpec& spec = {})
{
    return integrate_2d([&](Vec2 p) { return general_integrand(g, s, p); }, d, spec);
}

/// Double integral of (curl F)(r).(r_u x r_v). A guard failure at any node fails the whole integral.
inline IntegralResult stokes_curl_rhs(const VectorField3& f, const ParamSurface& s, const PlanarRegion& d,
                                      const QuadratureSpec& spec = {})
{
    return integrate_2d([&](Vec2 p) { return curl_integrand(f, s, p); }, d, spec);
}

/// |(G_u.r_v - G_v.r_u) - (curl F).(r_u x r_v)| at p for G = F o r.
inline double integrand_identity_gap(const VectorField3& f, const ParamSurface& s, Vec2 p)
{
    const VectorField2to3 g = compose_field(f, s);
    return std::abs(general_integrand(g, s, p) - curl_integrand(f, s, p));
}

/// Side-by-side comparison of two integrals that a theorem says are equal.
struct VerificationReport {
    std::string scenario_name;
    std::optional<IntegralResult> lhs;
    std::optional<IntegralResult> rhs;
    double abs_diff{0.0};
    double tolerance{0.0};
    bool pass{false};
    std::map<std::string, double> parameters;
    std::optional<double> expected;  ///< closed-form value both sides must also match, when known
    std::optional<std::string> error;

    /// Recomputes abs_diff and pass from the stored sides.
    void finalize()
    {
        if (error || !lhs || !rhs) {
            abs_diff = std::numeric_limits<double>::quiet_NaN();
            pass = false;
            return;
        }
        abs_diff = std::abs(lhs->value - rhs->value);
        pass = abs_diff <= tolerance;
        if (expected) {
            pass = pass && std::abs(lhs->value - *expected) <= tolerance &&
                   std::abs(rhs->value - *expected) <= tolerance;
        }
    }
};

/// Runs both sides and builds a report. Library errors become a failed report carrying the message.
template <typename Lhs, typename Rhs>
VerificationReport verify_sides(std::string name, double tolerance, Lhs&& lhs, Rhs&& rhs)
{
    VerificationReport report;
    report.scenario_name = std::move(name);
    report.tolerance = tolerance;
    try {
        report.lhs = lhs();
        report.rhs = rhs();
    } catch (const Error& e) {
        report.error = e.what();
    }
    report.finalize();
    return report;
}

inline VerificationReport verify_general(const VectorField2to3& g, const ParamSurface& s, const PlanarRegion& d,
                                         const QuadratureSpec& spec = {}, double tol = kAnalyticTolerance)
{
    return verify_sides(
        "general", tol, [&] { return stokes_general_lhs(g, s, d, spec); },
        [&] { return stokes_general_rhs(g, s, d, spec); });
}

/// Line integral of F.dr (through G = F o r) against the curl double integral.
inline VerificationReport verify_curl_form(const VectorField3& f, const ParamSurface& s, const PlanarRegion& d,
                                           const QuadratureSpec& spec = {}, double tol = kAnalyticTolerance)
{
    return verify_sides(
        "curl-form", tol, [&] { return stokes_general_lhs(compose_field(f, s), s, d, spec); },
        [&] { return stokes_curl_rhs(f, s, d, spec); });
}

inline VerificationReport verify_green(const PullbackOneForm& form, const PlanarRegion& d,
                                       const QuadratureSpec& spec = {}, double tol = kAnalyticTolerance)
{
    return verify_sides(
        "green", tol, [&] { return greens_lhs(form, d, spec); }, [&] { return greens_rhs(form, d, spec); });
}

} // namespace stokes
