#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fractree/point_set.hpp"
#include "fractree/vec2.hpp"

namespace fractree {

/// Contractive planar similarity x -> lambda R(theta) x + t.
struct SimilarityMap {
    double lambda = 0.5;  // in (0, 1), strictly
    double theta = 0.0;   // rotation, radians
    Vec2 t;

    Vec2 apply(Vec2 p) const;
};

/// Deterministic context-free bracketed L-system over {F, +, -, [, ]} plus
/// pass-through symbols.
struct LSystemSpec {
    std::string axiom;
    std::map<char, std::string> rules;
    double angle_delta = 0.0;
    int iterations_cap = 16;
};

struct DiscreteEdgeLabel {
    double lambda = 1.0;
    int sigma = +1;
    int rule_id = 0;
};

struct DiscreteNode {
    int id = 0;
    std::optional<int> parent;
    Vec2 pos;
    int depth = 0;
    // Parameters of the edge from the parent to this node; empty on the root.
    std::optional<DiscreteEdgeLabel> edge;
};

/// Rooted embedded tree with per-edge parameters. Node 0 is the root;
/// children appear in declaration order (map order for IFS expansions,
/// left-to-right for L-systems).
struct DiscreteTree {
    std::vector<DiscreteNode> nodes;

    int max_depth() const;
    std::vector<std::vector<int>> children_index() const;
};

struct ExpandOptions {
    std::uint64_t budget_cap = std::uint64_t{1} << 22;
    double initial_heading = M_PI / 2.0;  // turtle heading, L-systems only
};

/// Parses the "ifs" spec document (JSON text). Maps are returned in
/// declaration order. Throws Error("parse") for malformed documents and
/// Error("contractivity") for lambda >= 1.
std::vector<SimilarityMap> parse_ifs(const std::string& text);

/// Parses the "lsystem" spec document (JSON text). Bracket balance is
/// validated in the axiom and in every rule body.
LSystemSpec parse_lsystem(const std::string& text);

std::string serialize_ifs(const std::vector<SimilarityMap>& maps);
std::string serialize_lsystem(const LSystemSpec& spec);

/// IFS expansion: one node per composition word of length <= depth, with
/// p(child) = F_i(p(parent word)).
DiscreteTree expand_discrete(const std::vector<SimilarityMap>& maps, int depth, Vec2 root,
                             const ExpandOptions& opts = {});

/// L-system expansion: rewrite the axiom `depth` times, then turtle-interpret.
/// F advances by scale_per_depth^bracket_depth, +/- turn by the spec angle,
/// brackets push and pop turtle state. Nodes sit at segment boundaries.
DiscreteTree expand_discrete(const LSystemSpec& spec, int depth, Vec2 root,
                             double scale_per_depth, const ExpandOptions& opts = {});

/// All m^K points of length-K map compositions applied to the root point,
/// deduplicated within the PointSet tolerance.
PointSet attractor_points(const std::vector<SimilarityMap>& maps, int depth, Vec2 root,
                          const ExpandOptions& opts = {});

}  // namespace fractree
