#pragma once

#include <vector>

#include "fractree/discrete.hpp"
#include "fractree/point_set.hpp"
#include "fractree/scaffold.hpp"
#include "fractree/tree.hpp"

namespace fractree {

/// Realized endpoints of all depth-k branches. Throws Error("depth") when
/// the tree has no branches at that depth.
PointSet endpoint_set(const GeneratorTree& gtree, int k);

/// Exact Hausdorff distance between finite point sets, computed by pairwise
/// distances. Throws Error("empty_set") on empty input.
double hausdorff(const PointSet& p, const PointSet& q);

/// Grid-bucketed accelerator; returns a value identical to hausdorff().
double hausdorff_grid(const PointSet& p, const PointSet& q);

struct CanopyReport {
    struct Row {
        int k;
        double hausdorff;
    };
    std::vector<Row> rows;
    double fitted_ratio = 0.0;  // geometric decay from least squares on log d
    int k_ref = 0;
};

/// Distances d_H(E_k, A_{k_ref}) for each requested k, plus the fitted decay
/// ratio. Requires k_ref >= max(k_range) + 4 so the reference is a faithful
/// attractor stand-in.
CanopyReport canopy_equivalence_report(const GeneratorTree& gtree,
                                       const std::vector<SimilarityMap>& maps,
                                       const std::vector<int>& k_range, int k_ref,
                                       Vec2 root);

/// Scaffold whose corner nodes are intersections of each branch's
/// start-heading line with its end-heading line. Straight branches
/// (parallel or coincident lines) take the branch endpoint as the corner.
Scaffold extract_scaffold_tangent(const GeneratorTree& gtree);

struct RecoveryReport {
    struct Row {
        int g;
        double lambda_hat_mean;
        double theta_hat_abs_mean;
        int sample_count;
        double max_deviation;  // worst spread from the generation means
    };
    std::vector<Row> rows;  // generations 2..depth
};

/// Per-generation similarity data measured from scaffold edges: for each
/// edge at generation g >= 2, lambda_hat = |e|/|parent(e)| and theta_hat =
/// signed turn from the parent edge direction. Generation-1 edges are
/// skipped because they are measured against the root trunk.
RecoveryReport recover_parameters(const Scaffold& scaffold);

}  // namespace fractree
