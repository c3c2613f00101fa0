#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "analysis.hpp"
#include "catalog.hpp"
#include "errors.hpp"
#include "scenarios.hpp"
#include "stokes.hpp"

namespace stokes::cli {

using Json = nlohmann::ordered_json;

/// Exit codes of the batch front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Formats a double with 15 significant digits; non-finite values become JSON null.
/// Negative zero prints as 0 so that parse-and-reprint is stable.
inline std::string format_number(double x)
{
    if (!std::isfinite(x)) return "null";
    if (x == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

namespace detail {

inline void write_json(std::ostream& os, const Json& j, int depth)
{
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) os << ",\n";
            first = false;
            os << pad << Json(key).dump() << ": ";
            write_json(os, value, depth + 1);
        }
        os << '\n' << close << '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) os << ",\n";
            os << pad;
            write_json(os, j[i], depth + 1);
        }
        os << '\n' << close << ']';
        return;
    }
    case Json::value_t::number_float:
        os << format_number(j.get<double>());
        return;
    default:
        os << j.dump();
        return;
    }
}

} // namespace detail

/// Pretty-prints with two-space indentation and 15-significant-digit floats.
inline std::string dump_json(const Json& j)
{
    std::ostringstream os;
    detail::write_json(os, j, 0);
    os << '\n';
    return os.str();
}

inline Json side_to_json(const std::optional<IntegralResult>& side)
{
    if (!side) return nullptr;
    Json j;
    j["value"] = side->value;
    j["error_estimate"] = side->error_estimate;
    return j;
}

/// Report object: name, parameters, lhs, rhs, abs_diff, tolerance, pass (and error when one occurred).
inline Json report_to_json(const VerificationReport& r)
{
    Json j;
    j["name"] = r.scenario_name;
    Json params = Json::object();
    for (const auto& [key, value] : r.parameters) params[key] = value;
    j["parameters"] = params;
    j["lhs"] = side_to_json(r.lhs);
    j["rhs"] = side_to_json(r.rhs);
    j["abs_diff"] = r.abs_diff;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    if (r.error) j["error"] = *r.error;
    return j;
}

inline std::string reports_to_json(const std::vector<VerificationReport>& reports)
{
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return dump_json(arr);
}

inline std::string reports_to_csv(const std::vector<VerificationReport>& reports)
{
    std::ostringstream os;
    os << "name,lhs_value,lhs_error_estimate,rhs_value,rhs_error_estimate,abs_diff,tolerance,pass,parameters,error\n";
    auto side = [](const std::optional<IntegralResult>& s) {
        if (!s) return std::string(",");
        return format_number(s->value) + "," + format_number(s->error_estimate);
    };
    for (const auto& r : reports) {
        std::string params;
        for (const auto& [key, value] : r.parameters) {
            if (!params.empty()) params += ';';
            params += key + "=" + format_number(value);
        }
        std::string err = r.error.value_or("");
        for (auto& c : err)
            if (c == '"') c = '\'';
        os << r.scenario_name << ',' << side(r.lhs) << ',' << side(r.rhs) << ',' << format_number(r.abs_diff) << ','
           << format_number(r.tolerance) << ',' << (r.pass ? "true" : "false") << ",\"" << params << "\",\"" << err
           << "\"\n";
    }
    return os.str();
}

enum class Format { json, csv };

struct RunConfig {
    std::string scenario = "all";
    double delta = catalog::kDefaultDelta;
    std::optional<int> order;
    std::optional<int> panels;  ///< panels per axis in 2D; paths use twice as many
    std::optional<double> tolerance;
    std::optional<std::string> output;
    Format format = Format::json;

    QuadratureSpec quadrature() const
    {
        QuadratureSpec spec;
        if (order) spec.order = *order;
        if (panels) {
            spec.panels_2d = *panels;
            spec.panels_1d = 2 * *panels;
        }
        return spec;
    }
};

/// Builds every requested scenario first, so that an unknown name or bad delta aborts before any output.
inline std::vector<catalog::Scenario> resolve_scenarios(const RunConfig& config)
{
    std::vector<catalog::Scenario> out;
    if (config.scenario == "all") {
        for (auto name : catalog::kScenarioNames) {
            // Scenarios restricted to delta < 1 are skipped rather than failing the whole batch.
            try {
                out.push_back(catalog::make_scenario(name, config.delta));
            } catch (const ParameterError&) {
                if (!(config.delta > 0.0)) throw;
            }
        }
    } else {
        out.push_back(catalog::make_scenario(config.scenario, config.delta));
    }
    return out;
}

/// Runs the configured scenarios and writes the report file (or `out` when no path is set).
/// Returns 0 when every report passes, 1 when any fails, 2 on usage or parameter errors.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    std::vector<catalog::Scenario> scenarios;
    QuadratureSpec spec;
    try {
        spec = config.quadrature();
        spec.validate();
        scenarios = resolve_scenarios(config);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::vector<VerificationReport> reports;
    for (const auto& sc : scenarios) reports.push_back(catalog::run_scenario(sc, spec, config.tolerance));

    const std::string text = config.format == Format::json ? reports_to_json(reports) : reports_to_csv(reports);
    if (config.output) {
        std::ofstream file(*config.output, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << *config.output << '\n';
            return kExitUsage;
        }
        file << text;
    } else {
        out << text;
    }

    bool all_pass = true;
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        if (!r.pass) err << "FAIL " << r.scenario_name << (r.error ? ": " + *r.error : std::string()) << '\n';
    }
    return all_pass ? kExitPass : kExitFail;
}

/// Triangle mesh over a (nu + 1) x (nv + 1) row-major vertex grid, two triangles per cell.
/// Extra isolated vertices may follow the grid.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;  ///< 1-based vertex indices
};

struct MeshRequest {
    std::string surface = "moebius";  ///< moebius, spanning or flat (unit square)
    double delta = catalog::kDefaultDelta;
    int nu = 200;
    int nv = 20;
    double z_stretch = 1.0;
};

/// Samples the named surface. For `spanning` with delta < 1 the two z-axis crossings are appended.
inline Mesh build_mesh(const MeshRequest& req)
{
    if (req.nu < 2 || req.nv < 2) throw ParameterError("mesh resolutions must be at least 2");
    std::optional<catalog::SurfacePatch> patch;
    if (req.surface == "moebius") {
        patch = catalog::moebius(req.delta);
    } else if (req.surface == "spanning") {
        patch = catalog::spanning_surface(req.delta);
    } else if (req.surface == "flat") {
        patch = catalog::flat(PlanarRegion::rectangle(0.0, 1.0, 0.0, 1.0));
    } else {
        throw ParameterError("unknown mesh surface '" + req.surface + "'");
    }

    auto stretch = [&](Vec3 p) { return Vec3{p.x, p.y, req.z_stretch * p.z}; };
    const auto [lo, hi] = patch->region.bounding_box();
    Mesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(req.nu + 1) * (req.nv + 1) + 2);
    for (int i = 0; i <= req.nu; ++i) {
        for (int j = 0; j <= req.nv; ++j) {
            const Vec2 p{lo.u + (hi.u - lo.u) * i / req.nu, lo.v + (hi.v - lo.v) * j / req.nv};
            mesh.vertices.push_back(stretch(patch->surface(p)));
        }
    }
    auto index = [&](int i, int j) { return i * (req.nv + 1) + j + 1; };
    for (int i = 0; i < req.nu; ++i) {
        for (int j = 0; j < req.nv; ++j) {
            mesh.faces.push_back({index(i, j), index(i + 1, j), index(i + 1, j + 1)});
            mesh.faces.push_back({index(i, j), index(i + 1, j + 1), index(i, j + 1)});
        }
    }
    if (req.surface == "spanning" && req.delta < 1.0) {
        for (const Vec3& p : analysis::z_axis_intersections(req.delta, 1e-12)) mesh.vertices.push_back(stretch(p));
    }
    return mesh;
}

/// Plain-text polygon format: "v x y z" lines then "f i j k" lines.
inline void write_mesh(const Mesh& mesh, std::ostream& os)
{
    for (const Vec3& v : mesh.vertices)
        os << "v " << format_number(v.x) << ' ' << format_number(v.y) << ' ' << format_number(v.z) << '\n';
    for (const auto& f : mesh.faces) os << "f " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

/// Builds and writes the mesh; throws Error when the path cannot be written.
inline Mesh export_mesh(const MeshRequest& req, const std::string& path)
{
    Mesh mesh = build_mesh(req);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write mesh file " + path);
    write_mesh(mesh, file);
    if (!file) throw Error("failed while writing mesh file " + path);
    return mesh;
}

} // namespace stokes::cli
