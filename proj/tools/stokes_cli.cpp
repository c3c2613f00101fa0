#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stokes/cli.hpp"

int main(int argc, char** argv)
{
    using namespace stokes;

    CLI::App app{"Numerical verification of Green's and Stokes' theorems on parametric surfaces"};
    app.require_subcommand(1);

    cli::RunConfig config;
    std::string format = "json";
    auto* run = app.add_subcommand("run", "Run a named scenario (or all) and emit verification reports");
    run->add_option("scenario", config.scenario, "Scenario name or 'all'")->required();
    run->add_option("--delta", config.delta, "Strip half-width");
    run->add_option("--order", config.order, "Gauss-Legendre nodes per panel");
    run->add_option("--panels", config.panels, "Panels per axis for double integrals (paths use twice as many)");
    run->add_option("--tol", config.tolerance, "Override the scenario tolerance");
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    run->add_option("-o,--output", config.output, "Report path (stdout when omitted)");

    cli::MeshRequest mesh;
    std::string mesh_path;
    auto* mesh_cmd = app.add_subcommand("mesh", "Export a triangle mesh of a catalog surface");
    mesh_cmd->add_option("surface", mesh.surface, "moebius, spanning or flat")
        ->required()
        ->check(CLI::IsMember({"moebius", "spanning", "flat"}));
    mesh_cmd->add_option("--delta", mesh.delta, "Strip half-width");
    mesh_cmd->add_option("--nu", mesh.nu, "Cells along u")->required();
    mesh_cmd->add_option("--nv", mesh.nv, "Cells along v")->required();
    mesh_cmd->add_option("--z-stretch", mesh.z_stretch, "Vertical stretch factor");
    mesh_cmd->add_option("-o,--output", mesh_path, "Mesh path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitUsage;
    }

    if (*run) {
        config.format = format == "csv" ? cli::Format::csv : cli::Format::json;
        return cli::run(config, std::cout, std::cerr);
    }

    try {
        const auto m = cli::export_mesh(mesh, mesh_path);
        std::cerr << "wrote " << m.vertices.size() << " vertices, " << m.faces.size() << " faces to " << mesh_path
                  << '\n';
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitFail;
    }
    return 0;
}
