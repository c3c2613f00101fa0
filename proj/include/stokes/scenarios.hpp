#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "analysis.hpp"
#include "catalog.hpp"
#include "errors.hpp"
#include "quadrature.hpp"
#include "stokes.hpp"

namespace stokes::catalog {

/// Requested scenario name is not in the registry.
class UnknownScenario : public Error {
public:
    explicit UnknownScenario(const std::string& name)
        : Error("unknown scenario '" + name + "'")
    {
    }
};

/// Stable scenario identifiers, in registry (and report) order.
inline constexpr std::array<std::string_view, 8> kScenarioNames{
    "moebius-general-u2", "moebius-pullback-singular", "boundary-B-4pi", "spanning-linear",
    "spanning-zaxis",     "self-intersect-delta3",     "green-square",   "green-triangle"};

/// Fixed matrix used by the spanning-linear scenario.
inline constexpr Mat3 kSpanningMatrix{{{0.3, -0.7, 0.2}, {0.5, 0.1, -0.4}, {-0.6, 0.8, 0.9}}};

/// Closed-form value of the line integral of A (x, y, z)^T around B.
inline double spanning_linear_value(const Mat3& a, double delta)
{
    return kPi * (2.0 + delta * delta) * (a[1][0] - a[0][1]) + 0.5 * kPi * delta * delta * (a[2][0] - a[0][2]);
}

/// Which identity a scenario checks.
enum class ScenarioKind {
    general,         ///< line integral of G.dr vs the G_u.r_v - G_v.r_u double integral
    curl_form,       ///< line integral of F.dr vs the curl double integral
    boundary_b,      ///< line integral over B on [0, 4pi] vs the closed form
    spanning_zaxis,  ///< pullback integral over the spanning boundary vs the integral over B
    green,           ///< boundary integral of P du + Q dv vs the double integral of Q_u - P_v
};

struct Scenario {
    std::string name;
    ScenarioKind kind{ScenarioKind::general};
    double delta{kDefaultDelta};
    std::optional<SurfacePatch> patch;
    std::variant<std::monostate, VectorField2to3, VectorField3, PullbackOneForm> field;
    std::optional<double> expected;
    double tolerance{kAnalyticTolerance};
    std::string provenance;
};

/// Builds a scenario. Throws UnknownScenario for unregistered names and ParameterError for bad delta.
/// The self-intersection scenario always uses delta = 3.
inline Scenario make_scenario(std::string_view name, double delta = kDefaultDelta)
{
    if (!(delta > 0.0)) throw ParameterError("delta must be positive");
    Scenario sc;
    sc.name = std::string(name);
    sc.delta = delta;

    if (name == "moebius-general-u2" || name == "self-intersect-delta3") {
        if (name == "self-intersect-delta3") sc.delta = 3.0;
        sc.patch = moebius(sc.delta);
        sc.field = u_squared_field();
        sc.expected = -160.0 * sc.delta / 9.0;
        sc.provenance = "both sides of the generalized form equal -160 delta / 9";
    } else if (name == "moebius-pullback-singular") {
        sc.patch = moebius(delta);
        sc.field = compose_field(singular_field(), sc.patch->surface);
        sc.expected = 0.0;
        sc.provenance = "pullback of the curl-free singular field around the preimage boundary is 0";
    } else if (name == "boundary-B-4pi") {
        if (!(delta < 1.0)) throw ParameterError("boundary-B-4pi requires delta < 1");
        sc.kind = ScenarioKind::boundary_b;
        sc.field = singular_field();
        sc.expected = 4.0 * kPi;
        sc.provenance = "singular field around B parametrised over [0, 4pi] gives 4 pi";
    } else if (name == "spanning-linear") {
        sc.kind = ScenarioKind::curl_form;
        sc.patch = spanning_surface(delta);
        sc.field = linear_field(kSpanningMatrix);
        sc.expected = spanning_linear_value(kSpanningMatrix, delta);
        sc.provenance = "pi (2 + delta^2)(a21 - a12) + (pi delta^2 / 2)(a31 - a13)";
    } else if (name == "spanning-zaxis") {
        if (!(delta < 1.0)) throw ParameterError("spanning-zaxis requires delta < 1");
        sc.kind = ScenarioKind::spanning_zaxis;
        sc.patch = spanning_surface(delta);
        sc.field = singular_field();
        sc.expected = 4.0 * kPi;
        sc.provenance = "pullback around the spanning boundary reproduces 4 pi; surface meets the z-axis twice";
    } else if (name == "green-square") {
        sc.kind = ScenarioKind::green;
        sc.patch = flat(PlanarRegion::rectangle(0.0, 1.0, 0.0, 1.0));
        sc.field = PullbackOneForm{[](Vec2 p) { return -0.5 * p.v; }, [](Vec2 p) { return 0.5 * p.u; },
                                   [](Vec2) { return 0.5; }, [](Vec2) { return -0.5; }};
        sc.expected = 1.0;
        sc.tolerance = 1e-10;
        sc.provenance = "area form on the unit square";
    } else if (name == "green-triangle") {
        sc.kind = ScenarioKind::green;
        sc.patch = flat(PlanarRegion::type_i(0.0, 1.0, Profile::constant(0.0),
                                             Profile{[](double x) { return x; }, [](double) { return 1.0; }}));
        sc.field = PullbackOneForm{[](Vec2) { return 0.0; }, [](Vec2 p) { return p.u; }, [](Vec2) { return 1.0; },
                                   [](Vec2) { return 0.0; }};
        sc.expected = 0.5;
        sc.provenance = "Q_u - P_v = 1 over the triangle 0 <= v <= u <= 1, area 1/2";
    } else {
        throw UnknownScenario(std::string(name));
    }
    return sc;
}

/// Runs a scenario at the given quadrature; `tolerance` overrides the scenario's own when set.
/// Library errors are captured in the report rather than thrown.
inline VerificationReport run_scenario(const Scenario& sc, const QuadratureSpec& spec = {},
                                       std::optional<double> tolerance = std::nullopt)
{
    const double tol = tolerance.value_or(sc.tolerance);
    VerificationReport report;
    switch (sc.kind) {
    case ScenarioKind::general: {
        const auto& g = std::get<VectorField2to3>(sc.field);
        if (sc.name == "moebius-pullback-singular" && sc.delta >= 1.0) {
            // r(0, -1) = (0, 0, 0): a wide strip passes through the z-axis.
            report.tolerance = tol;
            report.error = FieldDomainError(moebius_point(0.0, -1.0)).what();
            break;
        }
        report = verify_general(g, sc.patch->surface, sc.patch->region, spec, tol);
        break;
    }
    case ScenarioKind::curl_form: {
        const auto& f = std::get<VectorField3>(sc.field);
        report = verify_curl_form(f, sc.patch->surface, sc.patch->region, spec, tol);
        break;
    }
    case ScenarioKind::boundary_b: {
        const auto& f = std::get<VectorField3>(sc.field);
        report = verify_sides(
            sc.name, tol, [&] { return line_integral_over_B(f, sc.delta, spec); },
            [&] { return IntegralResult::exact(*sc.expected); });
        break;
    }
    case ScenarioKind::spanning_zaxis: {
        const auto& f = std::get<VectorField3>(sc.field);
        report = verify_sides(
            sc.name, tol,
            [&] { return stokes_general_lhs(compose_field(f, sc.patch->surface), sc.patch->surface,
                                            sc.patch->region, spec); },
            [&] { return line_integral_over_B(f, sc.delta, spec); });
        try {
            const auto crossings = analysis::z_axis_crossings(sc.delta, 1e-12);
            report.parameters["z_axis_points"] = static_cast<double>(crossings.size());
            if (crossings.size() == 2) {
                report.parameters["z_axis_upper"] = crossings[0].point.z;
                report.parameters["z_axis_lower"] = crossings[1].point.z;
            } else {
                report.error = "expected exactly two z-axis crossings";
            }
        } catch (const Error& e) {
            report.error = e.what();
        }
        break;
    }
    case ScenarioKind::green: {
        const auto& form = std::get<PullbackOneForm>(sc.field);
        report = verify_green(form, sc.patch->region, spec, tol);
        break;
    }
    }

    if (sc.name == "self-intersect-delta3") {
        try {
            for (auto branch : {analysis::WitnessBranch::minus, analysis::WitnessBranch::plus}) {
                const auto w = analysis::closed_form_witness(sc.delta, 0.1, branch);
                const char* key = branch == analysis::WitnessBranch::minus ? "witness_residual_minus"
                                                                           : "witness_residual_plus";
                report.parameters[key] = w.residual;
                if (w.residual > 1e-12) report.error = "closed-form witness residual too large";
            }
        } catch (const Error& e) {
            report.error = e.what();
        }
    }

    report.scenario_name = sc.name;
    report.parameters["delta"] = sc.delta;
    if (sc.expected) report.parameters["expected"] = *sc.expected;
    report.expected = sc.expected;
    report.finalize();
    return report;
}

} // namespace stokes::catalog
