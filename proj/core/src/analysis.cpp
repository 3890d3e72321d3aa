#include "fractree/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fractree/error.hpp"

namespace fractree {

PointSet endpoint_set(const GeneratorTree& gtree, int k) {
    std::vector<Vec2> pts;
    for (const auto& b : gtree.branches) {
        if (b.depth != k) continue;
        const auto& end = b.trajectory.end_state();
        pts.push_back({end.x, end.y});
    }
    if (pts.empty()) {
        throw Error(errkind::depth, "tree has no branches at depth " + std::to_string(k));
    }
    return PointSet(std::move(pts), "E_" + std::to_string(k));
}

namespace {

// max over p of min over q of |p - q|^2
double directed_sq(const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
    double worst = 0.0;
    for (const auto& a : p) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& b : q) {
            best = std::min(best, (a - b).norm2());
            if (best == 0.0) break;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

void require_nonempty(const PointSet& p, const PointSet& q) {
    if (p.empty() || q.empty()) {
        throw Error(errkind::empty_set, "hausdorff distance requires non-empty sets");
    }
}

}  // namespace

double hausdorff(const PointSet& p, const PointSet& q) {
    require_nonempty(p, q);
    return std::sqrt(std::max(directed_sq(p.points(), q.points()),
                              directed_sq(q.points(), p.points())));
}

namespace {

// Uniform grid over a point cloud for nearest-neighbor queries that are
// exact: rings of cells are scanned outward until no unscanned cell can
// beat the current best squared distance.
class PointGrid {
public:
    explicit PointGrid(const std::vector<Vec2>& pts) : pts_(pts) {
        lo_ = hi_ = pts[0];
        for (const auto& p : pts) {
            lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
            hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
        }
        double extent = std::max(hi_.x - lo_.x, hi_.y - lo_.y);
        int target = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(pts.size()))));
        cell_ = extent > 0.0 ? extent / target : 1.0;
        nx_ = cell_index(hi_.x, lo_.x) + 1;
        ny_ = cell_index(hi_.y, lo_.y) + 1;
        buckets_.resize(static_cast<size_t>(nx_) * static_cast<size_t>(ny_));
        for (size_t i = 0; i < pts.size(); ++i) {
            buckets_[bucket_of(pts[i])].push_back(static_cast<int>(i));
        }
    }

    double nearest_sq(Vec2 p) const {
        int cx = std::clamp(cell_index(p.x, lo_.x), 0, nx_ - 1);
        int cy = std::clamp(cell_index(p.y, lo_.y), 0, ny_ - 1);
        double best = std::numeric_limits<double>::infinity();
        int max_ring = std::max(nx_, ny_);
        for (int ring = 0; ring <= max_ring; ++ring) {
            // Any point in a farther ring is at least (ring-1)*cell away.
            if (ring > 0) {
                double reach = (static_cast<double>(ring) - 1.0) * cell_;
                if (reach > 0.0 && reach * reach > best) break;
            }
            for (int dx = -ring; dx <= ring; ++dx) {
                for (int dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                    int gx = cx + dx, gy = cy + dy;
                    if (gx < 0 || gy < 0 || gx >= nx_ || gy >= ny_) continue;
                    for (int idx : buckets_[static_cast<size_t>(gy) * nx_ + gx]) {
                        best = std::min(best, (p - pts_[static_cast<size_t>(idx)]).norm2());
                    }
                }
            }
        }
        return best;
    }

private:
    int cell_index(double v, double origin) const {
        return static_cast<int>(std::floor((v - origin) / cell_));
    }
    size_t bucket_of(Vec2 p) const {
        int gx = std::clamp(cell_index(p.x, lo_.x), 0, nx_ - 1);
        int gy = std::clamp(cell_index(p.y, lo_.y), 0, ny_ - 1);
        return static_cast<size_t>(gy) * nx_ + gx;
    }

    const std::vector<Vec2>& pts_;
    Vec2 lo_, hi_;
    double cell_ = 1.0;
    int nx_ = 1, ny_ = 1;
    std::vector<std::vector<int>> buckets_;
};

double directed_sq_grid(const std::vector<Vec2>& p, const PointGrid& q_grid) {
    double worst = 0.0;
    for (const auto& a : p) worst = std::max(worst, q_grid.nearest_sq(a));
    return worst;
}

}  // namespace

double hausdorff_grid(const PointSet& p, const PointSet& q) {
    require_nonempty(p, q);
    PointGrid pg(p.points()), qg(q.points());
    return std::sqrt(std::max(directed_sq_grid(p.points(), qg),
                              directed_sq_grid(q.points(), pg)));
}

CanopyReport canopy_equivalence_report(const GeneratorTree& gtree,
                                       const std::vector<SimilarityMap>& maps,
                                       const std::vector<int>& k_range, int k_ref,
                                       Vec2 root) {
    if (k_range.empty()) throw Error(errkind::config, "k_range must be non-empty");
    int k_max = *std::max_element(k_range.begin(), k_range.end());
    if (k_ref < k_max + 4) {
        throw Error(errkind::config, "k_ref must be at least max(k_range) + 4");
    }
    PointSet reference = attractor_points(maps, k_ref, root);

    CanopyReport report;
    report.k_ref = k_ref;
    for (int k : k_range) {
        report.rows.push_back({k, hausdorff(endpoint_set(gtree, k), reference)});
    }

    // Least squares on log d over rows with positive distance.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& row : report.rows) {
        if (!(row.hausdorff > 0.0)) continue;
        double x = row.k, y = std::log(row.hausdorff);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2 && n * sxx - sx * sx != 0.0) {
        report.fitted_ratio = std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
    }
    return report;
}

namespace {

constexpr double kParallelTangentThreshold = 1e-12;

// Intersection of the line through a along dir(ta) with the line through b
// along dir(tb); falls back to b when the lines are parallel or coincident.
Vec2 tangent_corner(Vec2 a, double ta, Vec2 b, double tb) {
    Vec2 u = unit_dir(ta), v = unit_dir(tb);
    double cross = u.cross(v);
    if (std::abs(cross) < kParallelTangentThreshold) return b;
    double t = (b - a).cross(v) / cross;
    return a + t * u;
}

}  // namespace

Scaffold extract_scaffold_tangent(const GeneratorTree& gtree) {
    auto roots = gtree.root_ids();
    if (roots.empty()) throw Error(errkind::config, "generator tree has no root branch");
    const auto& origin_state = gtree.branches[static_cast<size_t>(roots[0])].trajectory.start_state();

    Scaffold scaffold;
    scaffold.nodes.push_back({0, std::nullopt, {origin_state.x, origin_state.y}, 0});
    std::vector<int> node_of_branch(gtree.branches.size(), -1);
    for (const auto& b : gtree.branches) {
        const auto& s0 = b.trajectory.start_state();
        const auto& s1 = b.trajectory.end_state();
        Vec2 corner = tangent_corner({s0.x, s0.y}, s0.theta, {s1.x, s1.y}, s1.theta);

        int parent_node = b.parent ? node_of_branch[static_cast<size_t>(*b.parent)] : 0;
        ScaffoldNode node;
        node.id = static_cast<int>(scaffold.nodes.size());
        node.parent = parent_node;
        node.pos = corner;
        node.depth = scaffold.nodes[static_cast<size_t>(parent_node)].depth + 1;
        node_of_branch[static_cast<size_t>(b.id)] = node.id;
        scaffold.nodes.push_back(node);

        Vec2 chord = corner - scaffold.nodes[static_cast<size_t>(parent_node)].pos;
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

RecoveryReport recover_parameters(const Scaffold& scaffold) {
    if (scaffold.max_depth() < 3) {
        throw Error(errkind::depth, "parameter recovery requires scaffold depth >= 3");
    }
    for (const auto& e : scaffold.edges) {
        if (e.length == 0.0) {
            throw Error(errkind::degenerate_edge,
                        "zero-length scaffold edge at node " + std::to_string(e.node));
        }
    }

    struct Measure {
        double lambda_hat;
        double theta_hat;
    };
    std::map<int, std::vector<Measure>> by_generation;
    for (const auto& e : scaffold.edges) {
        if (e.generation < 2) continue;
        int parent_node = *scaffold.nodes[static_cast<size_t>(e.node)].parent;
        const ScaffoldEdge* parent_edge = scaffold.edge_into(parent_node);
        if (!parent_edge) continue;
        by_generation[e.generation].push_back(
            {e.length / parent_edge->length,
             wrap_angle(e.direction - parent_edge->direction)});
    }

    RecoveryReport report;
    for (const auto& [g, ms] : by_generation) {
        double lam_sum = 0.0, abs_theta_sum = 0.0;
        for (const auto& m : ms) {
            lam_sum += m.lambda_hat;
            abs_theta_sum += std::abs(m.theta_hat);
        }
        double lam_mean = lam_sum / static_cast<double>(ms.size());
        double theta_mean = abs_theta_sum / static_cast<double>(ms.size());
        double max_dev = 0.0;
        for (const auto& m : ms) {
            max_dev = std::max(max_dev, std::abs(m.lambda_hat - lam_mean));
            max_dev = std::max(max_dev, std::abs(std::abs(m.theta_hat) - theta_mean));
        }
        report.rows.push_back({g, lam_mean, theta_mean, static_cast<int>(ms.size()), max_dev});
    }
    return report;
}

}  // namespace fractree
