#include "dronecell/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace dronecell {

namespace {

bool contains(const Circle& c, const UserLocation& p)
{
    return distance(c.center, p) <= c.radius + 1e-12 * (1.0 + c.radius);
}

Circle diameter_circle(const UserLocation& p, const UserLocation& q)
{
    const UserLocation mid{0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
    return {mid, std::max(distance(mid, p), distance(mid, q))};
}

Circle circumcircle(const UserLocation& p, const UserLocation& q, const UserLocation& s)
{
    const double bx = q.x - p.x, by = q.y - p.y;
    const double cx = s.x - p.x, cy = s.y - p.y;
    const double d = 2.0 * (bx * cy - by * cx);
    const double scale = std::max({std::abs(bx), std::abs(by), std::abs(cx), std::abs(cy), 1.0});
    if (std::abs(d) <= 1e-14 * scale * scale) {
        // Collinear: the farthest pair spans the circle.
        Circle best = diameter_circle(p, q);
        for (const Circle& c : {diameter_circle(p, s), diameter_circle(q, s)})
            if (c.radius > best.radius)
                best = c;
        return best;
    }
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    const UserLocation center{p.x + (cy * b2 - by * c2) / d, p.y + (bx * c2 - cx * b2) / d};
    return {center, std::max({distance(center, p), distance(center, q), distance(center, s)})};
}

}  // namespace

Circle minimum_enclosing_circle(std::span<const UserLocation> points)
{
    if (points.empty())
        return {};

    std::vector<UserLocation> pts(points.begin(), points.end());
    std::mt19937_64 rng(0x5eedULL);
    for (std::size_t i = pts.size(); i > 1; --i)
        std::swap(pts[i - 1], pts[rng() % i]);

    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (contains(c, pts[i]))
            continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (contains(c, pts[j]))
                continue;
            c = diameter_circle(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (!contains(c, pts[k]))
                    c = circumcircle(pts[i], pts[j], pts[k]);
            }
        }
    }
    return c;
}

}  // namespace dronecell
