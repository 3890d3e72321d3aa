#include "fractree/compile.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "fractree/error.hpp"

namespace fractree {

int Scaffold::max_depth() const {
    int d = 0;
    for (const auto& n : nodes) d = std::max(d, n.depth);
    return d;
}

std::vector<std::vector<int>> Scaffold::children_index() const {
    std::vector<std::vector<int>> out(nodes.size());
    for (const auto& n : nodes) {
        if (n.parent) out[static_cast<size_t>(*n.parent)].push_back(n.id);
    }
    return out;
}

const ScaffoldEdge* Scaffold::edge_into(int node_id) const {
    for (const auto& e : edges) {
        if (e.node == node_id) return &e;
    }
    return nullptr;
}

namespace {

constexpr double kBracketMargin = 1e-9;  // keeps the turn solver away from +-2pi

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// Total turn T of a constant-curvature branch whose chord sits at angle
// alpha from the start heading. The chord direction is theta0 + T/2, so the
// residual is linear in T; the bracket (-2pi, 2pi) contains exactly one root.
double solve_total_turn(double alpha, double tol, int max_iterations) {
    double lo = -2.0 * M_PI + kBracketMargin;
    double hi = 2.0 * M_PI - kBracketMargin;
    auto residual = [alpha](double turn) { return 0.5 * turn - alpha; };
    if (!(residual(lo) < 0.0) || !(residual(hi) > 0.0)) {
        throw Error(errkind::no_solution,
                    "target unreachable by one constant-curvature arc "
                    "(chord at angle >= pi from the inherited heading)");
    }
    int iterations = 0;
    while (hi - lo > tol && iterations < max_iterations) {
        double mid = 0.5 * (lo + hi);
        if (residual(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++iterations;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

CurveGenerator curve_to_generator(const AnalyticCurve& curve, Span span) {
    double S = span.length();
    if (!(S > 0.0)) throw Error(errkind::config, "curve span must be non-degenerate");

    if (const auto* line = std::get_if<LineCurve>(&curve)) {
        Vec2 d = line->to - line->from;
        if (d.norm() == 0.0) {
            throw Error(errkind::irregular_curve, "line segment has zero length");
        }
        return {AnalyticProfile::constant(d.norm() / S), AnalyticProfile::constant(0.0),
                d.angle()};
    }
    if (const auto* arc = std::get_if<ArcCurve>(&curve)) {
        double rate = (arc->angle_end - arc->angle_begin) / S;
        if (!(arc->radius > 0.0) || rate == 0.0) {
            throw Error(errkind::irregular_curve, "arc has vanishing derivative");
        }
        double theta0 = arc->angle_begin + (rate > 0.0 ? M_PI / 2.0 : -M_PI / 2.0);
        return {AnalyticProfile::constant(arc->radius * std::abs(rate)),
                AnalyticProfile::constant(rate), theta0};
    }
    if (const auto* spiral = std::get_if<LogSpiralCurve>(&curve)) {
        Vec2 r0 = spiral->start - spiral->center;
        double growth = std::log(spiral->base);
        double speed_scale = r0.norm() * std::hypot(growth, spiral->turn_rate);
        if (!(r0.norm() > 0.0) || speed_scale == 0.0) {
            throw Error(errkind::irregular_curve, "spiral has vanishing derivative");
        }
        // Anchor the exponential so the speed at span.begin is |r0|*|g+iw|.
        AnalyticProfile rho = AnalyticProfile::scaled(
            speed_scale * std::pow(spiral->base, -span.begin),
            AnalyticProfile::exponential(spiral->base));
        double theta0 = r0.angle() + std::atan2(spiral->turn_rate, growth);
        return {rho, AnalyticProfile::constant(spiral->turn_rate), theta0};
    }
    throw Error(errkind::unsupported_family, "unsupported analytic curve family");
}

namespace {

BranchRealization realize_edge(const GeneratorState& inherited, Vec2 target,
                               const EdgeCurvePolicy& policy, const CompileOptions& opts) {
    Vec2 start{inherited.x, inherited.y};
    Vec2 chord = target - start;
    double chord_len = chord.norm();
    if (chord_len == 0.0) {
        throw Error(errkind::degenerate_edge, "discrete edge endpoints coincide");
    }
    double chord_angle = chord.angle();
    double S = opts.span_per_edge;

    double theta0 = 0.0;
    double total_turn = 0.0;
    bool overridden = false;
    switch (policy.kind) {
        case EdgeCurvePolicy::Kind::matched_heading_arc: {
            double alpha = wrap_angle(chord_angle - inherited.theta);
            total_turn = solve_total_turn(alpha, opts.bisect_tolerance,
                                          opts.bisect_max_iterations);
            theta0 = inherited.theta;
            break;
        }
        case EdgeCurvePolicy::Kind::straight_chord:
            theta0 = chord_angle;
            total_turn = 0.0;
            overridden = theta0 != inherited.theta;
            break;
        case EdgeCurvePolicy::Kind::constant_curvature_arc:
            if (std::abs(policy.total_turn) >= 2.0 * M_PI - kBracketMargin) {
                throw Error(errkind::config, "arc policy turn must satisfy |turn| < 2pi");
            }
            total_turn = policy.total_turn;
            theta0 = chord_angle - 0.5 * total_turn;
            overridden = theta0 != inherited.theta;
            break;
    }

    double rho0 = chord_len / (S * sinc(0.5 * total_turn));

    BranchRealization branch;
    branch.field = {AnalyticProfile::constant(rho0),
                    AnalyticProfile::constant(total_turn / S), PhaseMode::local};
    branch.init = {inherited.x, inherited.y, theta0, inherited.tau};
    branch.span = {0.0, S};
    branch.heading_overridden = overridden;
    auto traj = integrate_closed_form(branch.field, branch.init, branch.span, opts.integrate);
    branch.trajectory = std::move(*traj);  // constant profiles always have a closed form
    return branch;
}

void validate_discrete_tree(const DiscreteTree& dtree) {
    if (dtree.nodes.empty()) {
        throw Error(errkind::config, "cannot compile an empty discrete tree");
    }
    for (const auto& n : dtree.nodes) {
        if (!std::isfinite(n.pos.x) || !std::isfinite(n.pos.y)) {
            throw Error(errkind::nonfinite, "discrete node position is non-finite");
        }
        if (n.id == 0) {
            if (n.parent) throw Error(errkind::config, "node 0 must be the root");
        } else if (!n.parent || *n.parent >= n.id) {
            throw Error(errkind::config, "discrete nodes must be in creation order");
        }
    }
}

}  // namespace

GeneratorTree compile(const DiscreteTree& dtree, const EdgeCurvePolicy& policy,
                      const CompileOptions& opts) {
    validate_discrete_tree(dtree);

    GeneratorTree tree;
    tree.span_per_branch = opts.span_per_edge;
    auto children = dtree.children_index();
    std::vector<int> branch_of_node(dtree.nodes.size(), -1);

    GeneratorState origin{dtree.nodes[0].pos.x, dtree.nodes[0].pos.y, opts.root_heading,
                          opts.root_tau};

    std::deque<int> queue{0};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        const GeneratorState& inherited =
            u == 0 ? origin
                   : tree.branches[static_cast<size_t>(branch_of_node[static_cast<size_t>(u)])]
                         .trajectory.end_state();
        for (int v : children[static_cast<size_t>(u)]) {
            const auto& node = dtree.nodes[static_cast<size_t>(v)];
            BranchRealization branch = realize_edge(inherited, node.pos, policy, opts);
            branch.id = static_cast<int>(tree.branches.size());
            branch.parent = u == 0 ? std::nullopt
                                   : std::optional<int>(branch_of_node[static_cast<size_t>(u)]);
            branch.depth = node.depth;
            if (node.edge) {
                branch.rule = InheritanceRule{node.edge->lambda, node.edge->sigma, 1.0};
            }
            branch_of_node[static_cast<size_t>(v)] = branch.id;
            tree.branches.push_back(std::move(branch));
            queue.push_back(v);
        }
    }
    return tree;
}

Scaffold scaffold_of(const GeneratorTree& gtree) {
    auto roots = gtree.root_ids();
    if (roots.empty()) throw Error(errkind::config, "generator tree has no root branch");
    const auto& origin_state = gtree.branches[static_cast<size_t>(roots[0])].trajectory.start_state();
    Vec2 origin{origin_state.x, origin_state.y};
    for (int r : roots) {
        const auto& st = gtree.branches[static_cast<size_t>(r)].trajectory.start_state();
        if (st.x != origin.x || st.y != origin.y) {
            throw Error(errkind::config, "parentless branches do not share an origin");
        }
    }

    Scaffold scaffold;
    scaffold.nodes.push_back({0, std::nullopt, origin, 0});
    std::vector<int> node_of_branch(gtree.branches.size(), -1);
    for (const auto& b : gtree.branches) {
        int parent_node = b.parent ? node_of_branch[static_cast<size_t>(*b.parent)] : 0;
        const auto& start = b.trajectory.start_state();
        const auto& end = b.trajectory.end_state();
        Vec2 chord{end.x - start.x, end.y - start.y};

        ScaffoldNode node;
        node.id = static_cast<int>(scaffold.nodes.size());
        node.parent = parent_node;
        node.pos = {end.x, end.y};
        node.depth = scaffold.nodes[static_cast<size_t>(parent_node)].depth + 1;
        node_of_branch[static_cast<size_t>(b.id)] = node.id;
        scaffold.nodes.push_back(node);

        ScaffoldEdge edge;
        edge.node = node.id;
        edge.branch_id = b.id;
        edge.generation = b.depth;
        edge.length = chord.norm();
        edge.direction = chord.angle();
        if (b.rule) {
            edge.lambda_label = b.rule->lambda;
            edge.sigma_label = b.rule->sigma;
        }
        scaffold.edges.push_back(edge);
    }
    return scaffold;
}

namespace {
thread_local IsomorphismMismatch g_last_mismatch;
}

const IsomorphismMismatch& last_isomorphism_mismatch() { return g_last_mismatch; }

IsomorphismCertificate check_isomorphism(const Scaffold& scaffold, const DiscreteTree& dtree) {
    if (scaffold.nodes.empty() || dtree.nodes.empty()) {
        throw Error(errkind::config, "isomorphism check requires rooted inputs");
    }
    auto s_children = scaffold.children_index();
    auto d_children = dtree.children_index();

    IsomorphismCertificate cert;
    std::deque<std::pair<int, int>> queue{{0, 0}};
    while (!queue.empty()) {
        auto [s, d] = queue.front();
        queue.pop_front();
        cert.node_pairing.emplace_back(s, d);
        cert.max_position_gap =
            std::max(cert.max_position_gap,
                     distance(scaffold.nodes[static_cast<size_t>(s)].pos,
                              dtree.nodes[static_cast<size_t>(d)].pos));
        cert.depth_checked =
            std::max(cert.depth_checked, scaffold.nodes[static_cast<size_t>(s)].depth);

        const auto& sc = s_children[static_cast<size_t>(s)];
        const auto& dc = d_children[static_cast<size_t>(d)];
        if (sc.size() != dc.size()) {
            g_last_mismatch = {s, d,
                               "child count " + std::to_string(sc.size()) + " vs " +
                                   std::to_string(dc.size())};
            throw Error(errkind::not_isomorphic,
                        "degree mismatch at scaffold node " + std::to_string(s) +
                            " / discrete node " + std::to_string(d) + ": " +
                            g_last_mismatch.reason);
        }
        for (size_t i = 0; i < sc.size(); ++i) queue.emplace_back(sc[i], dc[i]);
    }
    return cert;
}

}  // namespace fractree
