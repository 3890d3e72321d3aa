#pragma once

#include <string>

#include "fractree/scaffold.hpp"
#include "fractree/tree.hpp"

namespace fractree {

struct RenderOptions {
    bool overlay_scaffold = false;      // dashed chords
    bool branchpoint_markers = false;   // filled circles at branchpoints
    double stroke_width_base = 2.0;
    double margin_fraction = 0.05;
    double width_px = 800.0;
};

/// Deterministic SVG: branches as solid polyline paths, the scaffold as
/// dashed chords, branchpoints as filled circles. Stroke width decays with
/// the branch's starting speed relative to the root's, so tapering follows
/// the generator profile. Identical inputs produce identical bytes.
std::string render_svg(const GeneratorTree& gtree, const Scaffold* scaffold,
                       const RenderOptions& opts = {});

}  // namespace fractree
