#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fractree/integrate.hpp"

namespace fractree {

/// How a child branch's field is derived from its parent's:
/// rho is scaled by lambda, kappa by sigma * kappa_scale. All transforms
/// are symbolic (the child wraps the parent's profiles), so inheritance is
/// exact.
struct InheritanceRule {
    double lambda = 1.0;     // in (0, 1]
    int sigma = +1;          // +1 or -1, selects turning direction
    double kappa_scale = 1.0;

    bool operator==(const InheritanceRule&) const = default;
};

/// A branch event: where on the parent span children spawn, and with which
/// rules. An absent s_b means the span end. Interior s_b truncates the
/// parent branch at s_b for geometric realization.
struct BranchEvent {
    std::optional<double> s_b;
    std::vector<InheritanceRule> rules;
};

/// Per-depth branch event templates. Depths past the end reuse the last
/// entry, so a single-element schedule is uniform.
struct Schedule {
    std::vector<BranchEvent> per_depth;

    const BranchEvent& at(int depth) const;
    bool empty() const { return per_depth.empty(); }
};

struct BranchRealization {
    int id = 0;
    std::optional<int> parent;
    int depth = 0;
    GeneratorField field;
    GeneratorState init;
    Span span;
    Trajectory trajectory;
    std::optional<InheritanceRule> rule;  // absent for root branches
    bool heading_overridden = false;      // set by chord-style compile policies
};

/// Rooted set of integrated branch realizations. Trees built by grow_tree
/// have exactly one parentless branch; compiled trees may have several, all
/// sharing the same origin state (one per discrete root edge).
struct GeneratorTree {
    std::vector<BranchRealization> branches;
    double span_per_branch = 1.0;

    int max_depth() const;
    std::vector<std::vector<int>> children_index() const;
    std::vector<int> root_ids() const;
};

struct GrowOptions {
    IntegratorKind integrator = IntegratorKind::automatic;
    IntegrateOptions integrate;
    std::uint64_t branch_cap = std::uint64_t{1} << 22;
};

/// Children spawned by a branch event: each child's state is an exact copy
/// of the parent state (the no-offset constraint) and its field is the
/// parent field transformed symbolically by the rule.
std::vector<std::pair<GeneratorState, GeneratorField>> spawn_children(
    const GeneratorState& parent_state, const GeneratorField& parent_field,
    const BranchEvent& event);

/// Breadth-first construction with one event per depth level; branches at
/// the target depth are leaves. Deterministic: identical inputs produce
/// bit-identical trees.
GeneratorTree grow_tree(const GeneratorField& root_field, const GeneratorState& root_init,
                        double span_per_branch, const Schedule& schedule, int depth,
                        const GrowOptions& opts = {});

struct ContinuityReport {
    struct Entry {
        int branch_id;
        double position_gap;
        double heading_gap;
    };
    std::vector<Entry> entries;  // one per non-root branch
    double max_position_gap = 0.0;
    double max_heading_gap = 0.0;

    bool all_exact() const { return max_position_gap == 0.0 && max_heading_gap == 0.0; }
};

/// Positional and heading gaps between every child's realized start and its
/// parent's state at the branch event. Inheritance is a state copy, so both
/// gaps are exactly zero for grown trees; violations are report entries,
/// never exceptions.
ContinuityReport check_branch_continuity(const GeneratorTree& tree);

}  // namespace fractree
