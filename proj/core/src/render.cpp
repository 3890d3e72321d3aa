#include "fractree/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fractree/error.hpp"
#include "fractree/integrate.hpp"

namespace fractree {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct Box {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    bool empty = true;

    void include(Vec2 p) {
        if (empty) {
            min_x = max_x = p.x;
            min_y = max_y = p.y;
            empty = false;
            return;
        }
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
};

double branch_start_speed(const BranchRealization& b) {
    return b.field.rho.eval(phase_base(b.field, b.init, b.span));
}

}  // namespace

std::string render_svg(const GeneratorTree& gtree, const Scaffold* scaffold,
                       const RenderOptions& opts) {
    if (gtree.branches.empty()) {
        throw Error(errkind::config, "cannot render an empty tree");
    }

    // SVG y grows downward; flip so trees grow up.
    Box box;
    for (const auto& b : gtree.branches) {
        for (const auto& s : b.trajectory.samples) box.include({s.state.x, -s.state.y});
    }
    if (scaffold) {
        for (const auto& n : scaffold->nodes) box.include({n.pos.x, -n.pos.y});
    }
    double extent = std::max(box.max_x - box.min_x, box.max_y - box.min_y);
    double pad = extent > 0.0 ? opts.margin_fraction * extent : 1.0;
    double vx = box.min_x - pad;
    double vy = box.min_y - pad;
    double vw = (box.max_x - box.min_x) + 2.0 * pad;
    double vh = (box.max_y - box.min_y) + 2.0 * pad;
    // Fit the larger dimension to the requested canvas size.
    double width_px = vw >= vh ? opts.width_px : opts.width_px * vw / vh;
    double height_px = vw >= vh ? opts.width_px * vh / vw : opts.width_px;
    double marker_radius = 0.006 * extent;
    double unit_stroke = opts.stroke_width_base * 0.002 * extent;

    auto roots = gtree.root_ids();
    double root_speed = branch_start_speed(gtree.branches[static_cast<size_t>(roots[0])]);

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width_px) +
           "\" height=\"" + fmt(height_px) + "\" viewBox=\"" + fmt(vx) + " " + fmt(vy) + " " +
           fmt(vw) + " " + fmt(vh) + "\">\n";

    for (const auto& b : gtree.branches) {
        double ratio = root_speed > 0.0 ? branch_start_speed(b) / root_speed : 1.0;
        double width = std::max(unit_stroke * ratio, unit_stroke * 0.05);
        svg += "<path fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"" + fmt(width) +
               "\" stroke-linecap=\"round\" d=\"";
        bool first = true;
        for (const auto& s : b.trajectory.samples) {
            svg += first ? "M " : " L ";
            svg += fmt(s.state.x) + " " + fmt(-s.state.y);
            first = false;
        }
        svg += "\"/>\n";
    }

    if (scaffold && opts.overlay_scaffold) {
        for (const auto& e : scaffold->edges) {
            const auto& child = scaffold->nodes[static_cast<size_t>(e.node)];
            const auto& parent = scaffold->nodes[static_cast<size_t>(*child.parent)];
            svg += "<path fill=\"none\" stroke=\"#888888\" stroke-width=\"" +
                   fmt(unit_stroke * 0.5) + "\" stroke-dasharray=\"" + fmt(4.0 * unit_stroke) +
                   " " + fmt(3.0 * unit_stroke) + "\" d=\"M " + fmt(parent.pos.x) + " " +
                   fmt(-parent.pos.y) + " L " + fmt(child.pos.x) + " " + fmt(-child.pos.y) +
                   "\"/>\n";
        }
    }

    if (scaffold && opts.branchpoint_markers) {
        auto children = scaffold->children_index();
        for (const auto& n : scaffold->nodes) {
            if (children[static_cast<size_t>(n.id)].empty()) continue;  // tips are not branchpoints
            svg += "<circle cx=\"" + fmt(n.pos.x) + "\" cy=\"" + fmt(-n.pos.y) + "\" r=\"" +
                   fmt(marker_radius) + "\" fill=\"#000000\"/>\n";
        }
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace fractree
