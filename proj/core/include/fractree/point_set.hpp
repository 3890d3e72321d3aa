#pragma once

#include <string>
#include <vector>

#include "fractree/vec2.hpp"

namespace fractree {

/// Finite planar point set. Construction sorts lexicographically and
/// removes duplicates within kDedupTolerance, so two sets with the same
/// geometry compare equal point-for-point.
class PointSet {
public:
    static constexpr double kDedupTolerance = 1e-12;

    PointSet() = default;
    explicit PointSet(std::vector<Vec2> points, std::string label = "");

    const std::vector<Vec2>& points() const { return points_; }
    const std::string& label() const { return label_; }
    size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

private:
    std::vector<Vec2> points_;
    std::string label_;
};

}  // namespace fractree
