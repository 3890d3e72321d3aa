#pragma once

#include <optional>
#include <vector>

#include "fractree/vec2.hpp"

namespace fractree {

struct ScaffoldNode {
    int id = 0;
    std::optional<int> parent;
    Vec2 pos;
    int depth = 0;  // root is 0
};

/// One edge per branch: from the node at the branch's start corner to the
/// node at its end corner. generation equals the branch depth, so ratios of
/// consecutive generations compare a branch against its parent.
struct ScaffoldEdge {
    int node = 0;       // child node id; the edge runs parent(node) -> node
    int branch_id = 0;
    int generation = 0;
    double length = 0.0;
    double direction = 0.0;  // absolute angle of the chord
    std::optional<double> lambda_label;
    std::optional<int> sigma_label;
};

struct Scaffold {
    std::vector<ScaffoldNode> nodes;
    std::vector<ScaffoldEdge> edges;

    int max_depth() const;
    std::vector<std::vector<int>> children_index() const;
    /// Edge whose child node is `node_id`, if any.
    const ScaffoldEdge* edge_into(int node_id) const;
};

}  // namespace fractree
