#include "fractree/cli.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fractree/analysis.hpp"
#include "fractree/error.hpp"
#include "fractree/io.hpp"
#include "fractree/render.hpp"

namespace fractree {

namespace {

using nlohmann::json;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

RenderOptions render_options(const RunConfig& config) {
    RenderOptions opts;
    opts.overlay_scaffold = config.overlay_scaffold;
    opts.branchpoint_markers = config.branchpoint_markers;
    opts.stroke_width_base = config.stroke_width_base;
    return opts;
}

GrowOptions grow_options(const RunConfig& config) {
    GrowOptions opts;
    opts.integrator = config.integrator;
    opts.integrate.rk4_step = config.step;
    return opts;
}

DiscreteTree expand_spec(const SpecDocument& spec, int depth) {
    if (const auto* ifs = std::get_if<IfsSpec>(&spec)) {
        return expand_discrete(ifs->maps, depth, ifs->root);
    }
    const auto& lsys = std::get<LsysSpec>(spec);
    ExpandOptions opts;
    opts.initial_heading = lsys.heading;
    return expand_discrete(lsys.system, depth, lsys.root, lsys.scale_per_depth, opts);
}

CompileOptions compile_options(const SpecDocument& spec) {
    CompileOptions opts;
    if (const auto* ifs = std::get_if<IfsSpec>(&spec)) {
        opts.root_heading = ifs->heading;
    } else if (const auto* lsys = std::get_if<LsysSpec>(&spec)) {
        opts.root_heading = lsys->heading;
    }
    return opts;
}

GeneratorTree tree_from_any_input(const RunConfig& config, const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (!j.is_discarded() && j.contains("kind") && j["kind"] == "tree") {
        return tree_from_json(text);
    }
    SpecDocument spec = parse_spec(text);
    if (const auto* gen = std::get_if<GeneratorSpec>(&spec)) {
        return grow_tree(gen->field, gen->init, gen->span, gen->schedule, config.depth,
                         grow_options(config));
    }
    return compile(expand_spec(spec, config.depth), config.policy, compile_options(spec));
}

int run_grow(const RunConfig& config, std::ostream& out) {
    SpecDocument spec = load_spec(config.input_path);
    const auto* gen = std::get_if<GeneratorSpec>(&spec);
    if (!gen) throw Error(errkind::config, "grow requires a generator spec");
    GeneratorTree tree = grow_tree(gen->field, gen->init, gen->span, gen->schedule,
                                   config.depth, grow_options(config));
    save_text(config.out_prefix + ".tree.json", tree_to_json(tree));
    Scaffold scaffold = scaffold_of(tree);
    save_text(config.out_prefix + ".svg",
              render_svg(tree, &scaffold, render_options(config)));
    out << "grew " << tree.branches.size() << " branches to depth " << config.depth << "\n";
    return kExitOk;
}

int run_compile(const RunConfig& config, std::ostream& out) {
    SpecDocument spec = load_spec(config.input_path);
    if (std::holds_alternative<GeneratorSpec>(spec)) {
        throw Error(errkind::config, "compile requires an ifs or lsystem spec");
    }
    DiscreteTree dtree = expand_spec(spec, config.depth);
    GeneratorTree tree = compile(dtree, config.policy, compile_options(spec));
    save_text(config.out_prefix + ".tree.json", tree_to_json(tree));

    Scaffold scaffold = scaffold_of(tree);
    try {
        IsomorphismCertificate cert = check_isomorphism(scaffold, dtree);
        save_text(config.out_prefix + ".cert.json",
                  certificate_to_json(cert, config.tolerance));
        bool ok = cert.max_position_gap < config.tolerance;
        out << (ok ? "PASS" : "FAIL") << " isomorphism: " << cert.node_pairing.size()
            << " nodes paired, max gap " << cert.max_position_gap << "\n";
        return ok ? kExitOk : kExitChecksFailed;
    } catch (const Error& e) {
        if (e.kind() != errkind::not_isomorphic) throw;
        save_text(config.out_prefix + ".cert.json",
                  failed_certificate_json(last_isomorphism_mismatch(), config.depth));
        out << "FAIL isomorphism: " << e.what() << "\n";
        return kExitChecksFailed;
    }
}

int run_analyze(const RunConfig& config, std::ostream& out) {
    GeneratorTree tree = tree_from_any_input(config, load_text(config.input_path));
    Scaffold tangents = extract_scaffold_tangent(tree);
    RecoveryReport report = recover_parameters(tangents);
    save_text(config.out_prefix + ".recovery.csv", recovery_to_csv(report));
    save_text(config.out_prefix + ".recovery.json", recovery_to_json(report));
    out << "recovered parameters for " << report.rows.size() << " generations\n";
    return kExitOk;
}

int run_verify(const RunConfig& config, std::ostream& out) {
    SpecDocument spec = load_spec(config.input_path);
    if (std::holds_alternative<GeneratorSpec>(spec)) {
        throw Error(errkind::config, "verify requires an ifs or lsystem spec");
    }
    DiscreteTree dtree = expand_spec(spec, config.depth);
    GeneratorTree tree = compile(dtree, config.policy, compile_options(spec));
    Scaffold scaffold = scaffold_of(tree);

    bool all_ok = true;
    auto report = [&](bool ok, const std::string& line) {
        all_ok = all_ok && ok;
        out << (ok ? "PASS " : "FAIL ") << line << "\n";
    };

    try {
        IsomorphismCertificate cert = check_isomorphism(scaffold, dtree);
        save_text(config.out_prefix + ".cert.json",
                  certificate_to_json(cert, config.tolerance));
        report(cert.max_position_gap < config.tolerance,
               "scaffold isomorphism at depth " + std::to_string(config.depth) +
                   ", max gap " + sci(cert.max_position_gap));
    } catch (const Error& e) {
        if (e.kind() != errkind::not_isomorphic) throw;
        save_text(config.out_prefix + ".cert.json",
                  failed_certificate_json(last_isomorphism_mismatch(), config.depth));
        report(false, std::string("scaffold isomorphism: ") + e.what());
    }

    if (const auto* ifs = std::get_if<IfsSpec>(&spec)) {
        int k_max = std::min(config.k_max, config.depth);
        for (int k = 1; k <= k_max; ++k) {
            double d = hausdorff(endpoint_set(tree, k),
                                 attractor_points(ifs->maps, k, ifs->root));
            report(d < config.tolerance,
                   "endpoint identity d_H(E_" + std::to_string(k) + ", A_" +
                       std::to_string(k) + ") = " + sci(d));
        }

        std::vector<int> k_range;
        for (int k = 2; k <= k_max; ++k) k_range.push_back(k);
        if (k_range.size() >= 2) {
            CanopyReport canopy = canopy_equivalence_report(tree, ifs->maps, k_range,
                                                            config.k_ref, ifs->root);
            save_text(config.out_prefix + ".canopy.csv", canopy_to_csv(canopy));
            save_text(config.out_prefix + ".canopy.json", canopy_to_json(canopy));
            bool monotone = true;
            for (size_t i = 1; i < canopy.rows.size(); ++i) {
                monotone = monotone && canopy.rows[i].hausdorff < canopy.rows[i - 1].hausdorff;
            }
            report(monotone, "canopy distances decrease monotonically");
            double lambda_max = 0.0;
            for (const auto& m : ifs->maps) lambda_max = std::max(lambda_max, m.lambda);
            report(std::abs(canopy.fitted_ratio - lambda_max) <= 0.1 * lambda_max,
                   "fitted decay ratio " + sci(canopy.fitted_ratio) +
                       " within 10% of lambda " + sci(lambda_max));
        }
    }

    out << (all_ok ? "VERIFY PASS\n" : "VERIFY FAIL\n");
    return all_ok ? kExitOk : kExitChecksFailed;
}

int run_render(const RunConfig& config, std::ostream& out) {
    GeneratorTree tree = tree_from_json(load_text(config.input_path));
    Scaffold scaffold = scaffold_of(tree);
    save_text(config.out_prefix + ".svg", render_svg(tree, &scaffold, render_options(config)));
    out << "rendered " << tree.branches.size() << " branches\n";
    return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
    try {
        switch (config.command) {
            case RunConfig::Command::grow:
                return run_grow(config, out);
            case RunConfig::Command::compile:
                return run_compile(config, out);
            case RunConfig::Command::analyze:
                return run_analyze(config, out);
            case RunConfig::Command::verify:
                return run_verify(config, out);
            case RunConfig::Command::render:
                return run_render(config, out);
        }
        throw Error(errkind::config, "unknown command");
    } catch (const Error& e) {
        out << json{{"kind", e.kind()}, {"message", e.what()}}.dump() << "\n";
        return e.kind() == errkind::io ? kExitIoError : kExitError;
    } catch (const std::exception& e) {
        out << json{{"kind", "internal"}, {"message", e.what()}}.dump() << "\n";
        return kExitError;
    }
}

}  // namespace fractree
