#pragma once

#include <cmath>

namespace fractree {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {k * x, k * y}; }
    bool operator==(const Vec2&) const = default;

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    double angle() const { return std::atan2(y, x); }
};

inline Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

inline Vec2 unit_dir(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Reduce an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a > M_PI) a -= 2.0 * M_PI;
    if (a <= -M_PI) a += 2.0 * M_PI;
    return a;
}

}  // namespace fractree
