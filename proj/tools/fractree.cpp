#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "fractree/cli.hpp"

namespace {

using fractree::EdgeCurvePolicy;
using fractree::IntegratorKind;
using fractree::RunConfig;

void add_common(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("input", config.input_path, "Input spec or tree JSON file")->required();
    cmd->add_option("--out", config.out_prefix, "Output path prefix")->required();
    cmd->add_option("--depth", config.depth, "Expansion / growth depth");
    cmd->add_option("--tolerance", config.tolerance, "Positional tolerance for checks");
}

void add_policy(CLI::App* cmd, RunConfig& config, double& arc_turn) {
    std::map<std::string, EdgeCurvePolicy::Kind> names{
        {"chord", EdgeCurvePolicy::Kind::straight_chord},
        {"arc", EdgeCurvePolicy::Kind::constant_curvature_arc},
        {"matched", EdgeCurvePolicy::Kind::matched_heading_arc},
    };
    cmd->add_option("--policy", config.policy.kind, "Edge curve policy")
        ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
    cmd->add_option("--arc-turn", arc_turn, "Total turn for --policy arc (radians)");
}

void add_integrator(CLI::App* cmd, RunConfig& config) {
    std::map<std::string, IntegratorKind> names{
        {"auto", IntegratorKind::automatic},
        {"closed", IntegratorKind::closed_form},
        {"rk4", IntegratorKind::rk4},
    };
    cmd->add_option("--integrator", config.integrator, "Integrator selection")
        ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
    cmd->add_option("--step", config.step, "RK4 step size per unit of s");
}

void add_render(CLI::App* cmd, RunConfig& config) {
    cmd->add_flag("--overlay-scaffold", config.overlay_scaffold,
                  "Overlay the chord scaffold as dashed segments");
    cmd->add_flag("--markers", config.branchpoint_markers,
                  "Draw filled circles at branchpoints");
    cmd->add_option("--stroke-width", config.stroke_width_base, "Base stroke width");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractree: compile discrete tree fractals into analytic generator trees "
                 "and verify scaffold and canopy correspondence"};
    app.require_subcommand(1);

    RunConfig config;
    double arc_turn = 0.5;

    auto* grow = app.add_subcommand("grow", "Grow a generator tree from a generator spec");
    add_common(grow, config);
    add_integrator(grow, config);
    add_render(grow, config);

    auto* compile = app.add_subcommand(
        "compile", "Compile an ifs/lsystem spec and emit an isomorphism certificate");
    add_common(compile, config);
    add_policy(compile, config, arc_turn);

    auto* analyze =
        app.add_subcommand("analyze", "Recover similarity parameters from the tangent scaffold");
    add_common(analyze, config);
    add_policy(analyze, config, arc_turn);
    add_integrator(analyze, config);

    auto* verify = app.add_subcommand(
        "verify", "Check scaffold isomorphism and canopy equivalence against tolerances");
    add_common(verify, config);
    add_policy(verify, config, arc_turn);
    verify->add_option("--kmax", config.k_max, "Largest endpoint depth to compare");
    verify->add_option("--kref", config.k_ref, "Attractor reference depth");

    auto* render = app.add_subcommand("render", "Render a tree JSON file to SVG");
    add_common(render, config);
    add_render(render, config);

    CLI11_PARSE(app, argc, argv);

    if (grow->parsed()) config.command = RunConfig::Command::grow;
    if (compile->parsed()) config.command = RunConfig::Command::compile;
    if (analyze->parsed()) config.command = RunConfig::Command::analyze;
    if (verify->parsed()) config.command = RunConfig::Command::verify;
    if (render->parsed()) config.command = RunConfig::Command::render;
    config.policy.total_turn = arc_turn;

    return fractree::run(config, std::cout);
}
