#include "fractree/point_set.hpp"

#include <algorithm>
#include <cmath>

#include "fractree/error.hpp"

namespace fractree {

PointSet::PointSet(std::vector<Vec2> points, std::string label)
    : label_(std::move(label)) {
    for (const auto& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(errkind::nonfinite, "point set contains non-finite coordinates");
        }
    }
    std::sort(points.begin(), points.end(), [](Vec2 a, Vec2 b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    points_.reserve(points.size());
    for (const auto& p : points) {
        if (!points_.empty() && distance(points_.back(), p) <= kDedupTolerance) continue;
        points_.push_back(p);
    }
}

}  // namespace fractree
