#pragma once

#include <iosfwd>
#include <string>

#include "fractree/compile.hpp"
#include "fractree/integrate.hpp"

namespace fractree {

/// One CLI invocation. Fully deterministic: no seeds, no wall-clock inputs.
struct RunConfig {
    enum class Command { grow, compile, analyze, verify, render };

    Command command = Command::grow;
    std::string input_path;
    std::string out_prefix;  // outputs are written as <prefix>.<suffix>

    int depth = 6;
    EdgeCurvePolicy policy = EdgeCurvePolicy::matched();
    IntegratorKind integrator = IntegratorKind::automatic;
    double step = 1e-3;
    double tolerance = 1e-9;
    int k_max = 8;
    int k_ref = 12;

    bool overlay_scaffold = false;
    bool branchpoint_markers = false;
    double stroke_width_base = 2.0;
};

// Exit codes: 0 all checks pass, 1 a configured check failed, 2 i/o error,
// 3 any other module error (parse, solver, budget, ...). Failures emit one
// machine-readable JSON object {"kind": ..., "message": ...} on `out`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitIoError = 2;
inline constexpr int kExitError = 3;

///   grow     generator spec -> tree JSON + SVG
///   compile  ifs/lsystem spec -> tree JSON + isomorphism certificate
///   analyze  any spec or tree JSON -> parameter-recovery CSV + JSON
///   verify   ifs (full) or lsystem (certificate only) -> canopy CSV,
///            per-check pass/fail lines, exit status
///   render   tree JSON -> SVG
int run(const RunConfig& config, std::ostream& out);

}  // namespace fractree
