#pragma once

#include <cmath>
#include <span>

#include "dronecell/channel.hpp"

namespace dronecell {

struct Circle {
    UserLocation center;
    double radius = 0.0;
};

inline double distance(const UserLocation& p, const UserLocation& q)
{
    return std::hypot(p.x - q.x, p.y - q.y);
}

/// Smallest circle containing every point (Welzl, move-to-front form, on a
/// deterministically shuffled copy). An empty input yields a zero circle at
/// the origin.
Circle minimum_enclosing_circle(std::span<const UserLocation> points);

}  // namespace dronecell
