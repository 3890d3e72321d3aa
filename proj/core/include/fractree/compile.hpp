#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fractree/discrete.hpp"
#include "fractree/scaffold.hpp"
#include "fractree/tree.hpp"

namespace fractree {

/// How compiled branches interpolate between discrete nodes.
///
/// matched_heading_arc honors the no-offset constraint exactly: the branch
/// leaves along the inherited heading and a constant curvature is solved so
/// the endpoint lands on the target node. straight_chord and
/// constant_curvature_arc override the inherited heading (recorded per
/// branch as heading_overridden); node positions are identical under every
/// policy.
struct EdgeCurvePolicy {
    enum class Kind { straight_chord, constant_curvature_arc, matched_heading_arc };
    Kind kind = Kind::matched_heading_arc;
    double total_turn = 0.0;  // constant_curvature_arc only

    static EdgeCurvePolicy chord() { return {Kind::straight_chord, 0.0}; }
    static EdgeCurvePolicy arc(double turn) { return {Kind::constant_curvature_arc, turn}; }
    static EdgeCurvePolicy matched() { return {Kind::matched_heading_arc, 0.0}; }
};

// Analytic curve descriptions accepted by curve_to_generator.
struct LineCurve {
    Vec2 from, to;
};
struct ArcCurve {
    Vec2 center;
    double radius;
    double angle_begin, angle_end;
};
struct LogSpiralCurve {
    Vec2 center;
    Vec2 start;
    double base;       // radial growth per unit parameter, > 0
    double turn_rate;  // angular rate per unit parameter
};
using AnalyticCurve = std::variant<LineCurve, ArcCurve, LogSpiralCurve>;

struct CurveGenerator {
    AnalyticProfile rho;
    AnalyticProfile kappa;
    double theta0;
};

/// Extracts generator data (speed, turning rate, initial heading) from an
/// analytic regular curve parameterized over the span, so that re-integration
/// from the curve's start point reproduces it. Throws
/// Error("irregular_curve") when the derivative vanishes.
CurveGenerator curve_to_generator(const AnalyticCurve& curve, Span span);

struct CompileOptions {
    double span_per_edge = 1.0;
    double root_heading = M_PI / 2.0;
    double root_tau = 0.0;
    double bisect_tolerance = 1e-12;
    int bisect_max_iterations = 200;
    IntegrateOptions integrate;
};

/// Realizes a discrete tree as a generator tree with one branch per discrete
/// edge. Every branch starts with the state inherited from its parent branch
/// (bit-for-bit), and its integrated endpoint lands on the discrete child
/// node within 1e-9. Throws Error("no_solution") when matched_heading_arc
/// cannot reach a node (chord at angle >= pi from the inherited heading) and
/// Error("degenerate_edge") for coincident endpoints.
GeneratorTree compile(const DiscreteTree& dtree, const EdgeCurvePolicy& policy,
                      const CompileOptions& opts = {});

/// Chord scaffold: one node at the shared origin of the parentless branches,
/// one node per branch endpoint, one edge per branch.
Scaffold scaffold_of(const GeneratorTree& gtree);

struct IsomorphismCertificate {
    std::vector<std::pair<int, int>> node_pairing;  // (scaffold id, discrete id)
    double max_position_gap = 0.0;
    int depth_checked = 0;
};

struct IsomorphismMismatch {
    int scaffold_node = -1;
    int discrete_node = -1;
    std::string reason;
};

/// Simultaneous breadth-first pairing preserving child order. Throws
/// Error("not_isomorphic") at the first mismatching node pair; the mismatch
/// details are available via last_isomorphism_mismatch() for reporting.
IsomorphismCertificate check_isomorphism(const Scaffold& scaffold, const DiscreteTree& dtree);

/// Details of the mismatch from the most recent check_isomorphism failure on
/// this thread.
const IsomorphismMismatch& last_isomorphism_mismatch();

}  // namespace fractree
