#include "fractree/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "fractree/error.hpp"

namespace fractree {

namespace {

void validate_rule(const InheritanceRule& r) {
    if (!(r.lambda > 0.0) || r.lambda > 1.0) {
        throw Error(errkind::config, "inheritance rule lambda must lie in (0, 1]");
    }
    if (r.sigma != 1 && r.sigma != -1) {
        throw Error(errkind::config, "inheritance rule sigma must be +1 or -1");
    }
}

}  // namespace

const BranchEvent& Schedule::at(int depth) const {
    if (per_depth.empty()) {
        throw Error(errkind::config, "schedule has no branch events");
    }
    auto idx = std::min<size_t>(static_cast<size_t>(depth), per_depth.size() - 1);
    return per_depth[idx];
}

int GeneratorTree::max_depth() const {
    int d = 0;
    for (const auto& b : branches) d = std::max(d, b.depth);
    return d;
}

std::vector<std::vector<int>> GeneratorTree::children_index() const {
    std::vector<std::vector<int>> out(branches.size());
    for (const auto& b : branches) {
        if (b.parent) out[static_cast<size_t>(*b.parent)].push_back(b.id);
    }
    return out;
}

std::vector<int> GeneratorTree::root_ids() const {
    std::vector<int> out;
    for (const auto& b : branches) {
        if (!b.parent) out.push_back(b.id);
    }
    return out;
}

std::vector<std::pair<GeneratorState, GeneratorField>> spawn_children(
    const GeneratorState& parent_state, const GeneratorField& parent_field,
    const BranchEvent& event) {
    if (event.rules.empty()) {
        throw Error(errkind::config, "branch event must carry at least one rule");
    }
    std::vector<std::pair<GeneratorState, GeneratorField>> out;
    out.reserve(event.rules.size());
    for (const auto& rule : event.rules) {
        validate_rule(rule);
        GeneratorField child;
        child.rho = AnalyticProfile::scaled(rule.lambda, parent_field.rho);
        child.kappa = AnalyticProfile::scaled(static_cast<double>(rule.sigma) * rule.kappa_scale,
                                              parent_field.kappa);
        child.phase_mode = parent_field.phase_mode;
        out.emplace_back(parent_state, child);
    }
    return out;
}

GeneratorTree grow_tree(const GeneratorField& root_field, const GeneratorState& root_init,
                        double span_per_branch, const Schedule& schedule, int depth,
                        const GrowOptions& opts) {
    if (depth < 0) throw Error(errkind::config, "depth must be >= 0");
    if (!(span_per_branch > 0.0)) throw Error(errkind::config, "span per branch must be > 0");

    GeneratorTree tree;
    tree.span_per_branch = span_per_branch;

    struct Pending {
        std::optional<int> parent;
        int depth;
        GeneratorField field;
        GeneratorState init;
        std::optional<InheritanceRule> rule;
    };
    std::deque<Pending> queue;
    queue.push_back({std::nullopt, 0, root_field, root_init, std::nullopt});
    std::uint64_t scheduled = 1;

    while (!queue.empty()) {
        Pending p = std::move(queue.front());
        queue.pop_front();

        bool has_event = p.depth < depth;
        double realized_span = span_per_branch;
        const BranchEvent* event = nullptr;
        if (has_event) {
            event = &schedule.at(p.depth);
            if (event->s_b) {
                if (!(*event->s_b > 0.0) || *event->s_b > span_per_branch) {
                    throw Error(errkind::config, "branch event s_b must lie in (0, span]");
                }
                realized_span = *event->s_b;
            }
        }

        BranchRealization br;
        br.id = static_cast<int>(tree.branches.size());
        br.parent = p.parent;
        br.depth = p.depth;
        br.field = p.field;
        br.init = p.init;
        br.span = {0.0, realized_span};
        br.rule = p.rule;
        br.trajectory = integrate(p.field, p.init, br.span, opts.integrator, opts.integrate);

        if (has_event) {
            if (scheduled + event->rules.size() > opts.branch_cap) {
                throw Error(errkind::budget, "branch budget exceeded");
            }
            scheduled += event->rules.size();
            const GeneratorState& end_state = br.trajectory.end_state();
            auto children = spawn_children(end_state, p.field, *event);
            for (size_t i = 0; i < children.size(); ++i) {
                queue.push_back({br.id, p.depth + 1, std::move(children[i].second),
                                 children[i].first, event->rules[i]});
            }
        }
        tree.branches.push_back(std::move(br));
    }
    return tree;
}

ContinuityReport check_branch_continuity(const GeneratorTree& tree) {
    ContinuityReport report;
    for (const auto& b : tree.branches) {
        if (!b.parent) continue;
        const auto& parent_end = tree.branches[static_cast<size_t>(*b.parent)]
                                     .trajectory.end_state();
        const auto& child_start = b.trajectory.start_state();
        double pos_gap = std::hypot(child_start.x - parent_end.x, child_start.y - parent_end.y);
        double heading_gap = std::abs(child_start.theta - parent_end.theta);
        report.entries.push_back({b.id, pos_gap, heading_gap});
        report.max_position_gap = std::max(report.max_position_gap, pos_gap);
        report.max_heading_gap = std::max(report.max_heading_gap, heading_gap);
    }
    return report;
}

}  // namespace fractree
