#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "vec.hpp"

namespace stokes {

/// Composite Gauss-Legendre settings shared by every integral in the library.
struct QuadratureSpec {
    int order = 8;          ///< nodes per panel
    int panels_1d = 256;    ///< panels per path segment / interval
    int panels_2d = 128;    ///< panels per axis for double integrals
    int refine_factor = 2;  ///< the error estimate compares against panels / refine_factor

    void validate() const
    {
        if (order < 2) throw ParameterError("quadrature order must be at least 2");
        if (panels_1d < 1 || panels_2d < 1) throw ParameterError("panel counts must be at least 1");
        if (refine_factor < 2) throw ParameterError("refine factor must be at least 2");
    }

    /// Panel count for the comparison value. A single panel compares against a refined rule instead.
    int comparison_panels(int panels) const { return panels >= refine_factor ? panels / refine_factor : panels * refine_factor; }
};

struct IntegralResult {
    double value{0.0};
    double error_estimate{0.0};  ///< |value - value at the comparison panel count|
    long long evaluations{0};

    /// An exactly known value, for reports whose one side is a closed form.
    static IntegralResult exact(double value) { return {value, 0.0, 1}; }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

/// P_n(x) and P_n'(x) by the three-term recurrence.
inline std::pair<double, double> legendre(int n, double x)
{
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

} // namespace detail

/// Nodes are the roots of P_n found by Newton iteration from Tricomi-style seeds.
inline GaussRule gauss_legendre(int n)
{
    if (n < 2) throw ParameterError("Gauss-Legendre rule needs at least two nodes");
    GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = detail::legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = detail::legendre(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

namespace detail {

/// Neumaier-compensated running sum; panel totals are accumulated in a fixed order.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_{0.0};
    double comp_{0.0};
};

inline double checked(double value, double location)
{
    if (!std::isfinite(value)) throw EvaluationError("non-finite integrand value", location);
    return value;
}

inline double checked(double value, Vec2 location)
{
    if (!std::isfinite(value)) throw EvaluationError("non-finite integrand value", location);
    return value;
}

inline double composite_1d(const std::function<double(double)>& f, double a, double b, const GaussRule& rule,
                           int panels, long long& evaluations)
{
    const double width = (b - a) / panels;
    const double half = 0.5 * width;
    CompensatedSum total;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        double panel = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double x = mid + half * rule.nodes[k];
            panel += rule.weights[k] * checked(f(x), x);
        }
        total.add(half * panel);
    }
    evaluations += static_cast<long long>(panels) * static_cast<long long>(rule.nodes.size());
    return total.value();
}

/// Tensor-product rule. For profile regions the outer axis runs through x = a + (b - a)(1 - cos(pi s)) / 2,
/// which smooths square-root behaviour of the inner width at the ends (e.g. discs).
inline double composite_2d(const std::function<double(Vec2)>& f, const PlanarRegion& region, const GaussRule& rule,
                           int panels, long long& evaluations)
{
    const bool graded = region.kind() != PlanarRegion::Kind::rectangle;
    const double a = graded ? 0.0 : region.a();
    const double b = graded ? 1.0 : region.b();
    const double span = region.b() - region.a();
    const double width = (b - a) / panels;
    const std::size_t n = rule.nodes.size();
    CompensatedSum total;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        double panel = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double s = mid + 0.5 * width * rule.nodes[k];
            double outer = s;
            double jacobian = 1.0;
            if (graded) {
                outer = region.a() + 0.5 * span * (1.0 - std::cos(std::numbers::pi * s));
                jacobian = 0.5 * span * std::numbers::pi * std::sin(std::numbers::pi * s);
            }
            const double lo = region.lower().value(outer);
            const double hi = region.upper().value(outer);
            const double inner_width = (hi - lo) / panels;
            CompensatedSum column;
            for (int q = 0; q < panels; ++q) {
                const double inner_mid = lo + (q + 0.5) * inner_width;
                double cell = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const Vec2 pt = region.point(outer, inner_mid + 0.5 * inner_width * rule.nodes[j]);
                    cell += rule.weights[j] * checked(f(pt), pt);
                }
                column.add(0.5 * inner_width * cell);
            }
            panel += rule.weights[k] * jacobian * column.value();
        }
        total.add(0.5 * width * panel);
    }
    evaluations += static_cast<long long>(panels) * panels * static_cast<long long>(n * n);
    return total.value();
}

} // namespace detail

/// Composite Gauss-Legendre integral of f over [a, b].
inline IntegralResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                                   const QuadratureSpec& spec = {})
{
    spec.validate();
    if (!(a < b)) throw ParameterError("integrate_1d requires a < b");
    const GaussRule rule = gauss_legendre(spec.order);
    IntegralResult result;
    result.value = detail::composite_1d(f, a, b, rule, spec.panels_1d, result.evaluations);
    const double reference =
        detail::composite_1d(f, a, b, rule, spec.comparison_panels(spec.panels_1d), result.evaluations);
    result.error_estimate = std::abs(result.value - reference);
    return result;
}

/// Double integral over a simple region; the inner axis is mapped affinely onto [g1, g2] per outer node.
inline IntegralResult integrate_2d(const std::function<double(Vec2)>& f, const PlanarRegion& region,
                                   const QuadratureSpec& spec = {})
{
    spec.validate();
    const GaussRule rule = gauss_legendre(spec.order);
    IntegralResult result;
    result.value = detail::composite_2d(f, region, rule, spec.panels_2d, result.evaluations);
    const double reference =
        detail::composite_2d(f, region, rule, spec.comparison_panels(spec.panels_2d), result.evaluations);
    result.error_estimate = std::abs(result.value - reference);
    return result;
}

/// Differential one-form P du + Q dv on the parameter plane.
/// The optional derivatives feed the Green double integral; when absent it falls back to finite differences.
struct PullbackOneForm {
    std::function<double(Vec2)> P;
    std::function<double(Vec2)> Q;
    std::function<double(Vec2)> dQ_du{};
    std::function<double(Vec2)> dP_dv{};

    static PullbackOneForm zero()
    {
        auto z = [](Vec2) { return 0.0; };
        return {z, z, z, z};
    }
};

/// Sum over segments of the integral of P u'(t) + Q v'(t) over t in [0, 1].
inline IntegralResult integrate_path(const PullbackOneForm& form, const BoundaryPath& path,
                                     const QuadratureSpec& spec = {})
{
    IntegralResult total;
    for (const auto& seg : path.segments) {
        auto integrand = [&form, &seg](double t) {
            const Vec2 p = seg.point(t);
            const Vec2 d = seg.tangent(t);
            return form.P(p) * d.u + form.Q(p) * d.v;
        };
        const IntegralResult part = integrate_1d(integrand, 0.0, 1.0, spec);
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.evaluations += part.evaluations;
    }
    return total;
}

/// Signed area 1/2 * closed integral of (u dv - v du); positive for counterclockwise paths.
inline double signed_area(const BoundaryPath& path, const QuadratureSpec& spec = {})
{
    const PullbackOneForm area{[](Vec2 p) { return -0.5 * p.v; }, [](Vec2 p) { return 0.5 * p.u; }};
    return integrate_path(area, path, spec).value;
}

} // namespace stokes
