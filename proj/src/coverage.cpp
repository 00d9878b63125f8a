#include "dronecell/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace dronecell {

void PositionBox::validate() const
{
    if (!std::isfinite(x_l) || !std::isfinite(x_u) || !std::isfinite(y_l) || !std::isfinite(y_u))
        throw std::invalid_argument("position box bounds must be finite");
    if (!(x_l <= x_u) || !(y_l <= y_u))
        throw std::invalid_argument("position box requires x_l <= x_u and y_l <= y_u");
}

bool PositionBox::contains(const UserLocation& p, double tol) const
{
    return p.x >= x_l - tol && p.x <= x_u + tol && p.y >= y_l - tol && p.y <= y_u + tol;
}

UserLocation PositionBox::project(const UserLocation& p) const
{
    return {std::clamp(p.x, x_l, x_u), std::clamp(p.y, y_l, y_u)};
}

void AltitudeBounds::validate() const
{
    if (!(h_l >= 0.0) || !(h_l <= h_u))
        throw std::invalid_argument("altitude bounds require 0 <= h_l <= h_u");
}

std::size_t count_within(std::span<const UserLocation> users, const UserLocation& center, double r)
{
    const double limit = (r + kRadiusTol) * (r + kRadiusTol);
    return static_cast<std::size_t>(std::count_if(users.begin(), users.end(), [&](const auto& u) {
        const double dx = u.x - center.x, dy = u.y - center.y;
        return dx * dx + dy * dy <= limit;
    }));
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Sweep events closer than this (radians) are treated as simultaneous.
constexpr double kAngleTol = 1e-12;

std::vector<std::size_t> served_set(std::span<const UserLocation> users, const UserLocation& center,
                                    double r)
{
    const double limit = (r + kRadiusTol) * (r + kRadiusTol);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < users.size(); ++i) {
        const double dx = users[i].x - center.x, dy = users[i].y - center.y;
        if (dx * dx + dy * dy <= limit)
            out.push_back(i);
    }
    return out;
}

// Points where the circle (c, r) crosses the box boundary.
void append_edge_crossings(const UserLocation& c, double r, const PositionBox& box,
                           std::vector<UserLocation>& out)
{
    auto on_vertical = [&](double x) {
        const double dx = x - c.x;
        const double s = r * r - dx * dx;
        if (s < 0.0)
            return;
        const double dy = std::sqrt(s);
        for (double y : {c.y - dy, c.y + dy})
            if (y >= box.y_l && y <= box.y_u)
                out.push_back({x, y});
    };
    auto on_horizontal = [&](double y) {
        const double dy = y - c.y;
        const double s = r * r - dy * dy;
        if (s < 0.0)
            return;
        const double dx = std::sqrt(s);
        for (double x : {c.x - dx, c.x + dx})
            if (x >= box.x_l && x <= box.x_u)
                out.push_back({x, y});
    };
    on_vertical(box.x_l);
    on_vertical(box.x_u);
    on_horizontal(box.y_l);
    on_horizontal(box.y_u);
}

// Centers that do not come from circle-circle intersections.
std::vector<UserLocation> box_candidates(std::span<const UserLocation> users, double r,
                                         const PositionBox& box)
{
    std::vector<UserLocation> out;
    out.reserve(users.size() * 9 + 4);
    for (const auto& u : users)
        out.push_back(box.project(u));
    out.push_back({box.x_l, box.y_l});
    out.push_back({box.x_l, box.y_u});
    out.push_back({box.x_u, box.y_l});
    out.push_back({box.x_u, box.y_u});
    if (r > 0.0)
        for (const auto& u : users)
            append_edge_crossings(u, r, box, out);
    return out;
}

struct SweepEvent {
    double angle;
    int delta;  // +1 enter, -1 leave
};

// Deepest in-box points on the circle of radius r around users[i].
void sweep_circle(std::span<const UserLocation> users, std::size_t i, double r,
                  const PositionBox& box, std::size_t& best_depth,
                  std::vector<UserLocation>& best_points)
{
    const UserLocation& c = users[i];
    std::size_t base = 1;
    std::vector<SweepEvent> events;
    for (std::size_t j = 0; j < users.size(); ++j) {
        if (j == i)
            continue;
        const double dx = users[j].x - c.x;
        const double dy = users[j].y - c.y;
        const double d = std::hypot(dx, dy);
        if (d == 0.0) {
            ++base;
            continue;
        }
        if (d > 2.0 * r + kRadiusTol)
            continue;
        const double half = std::acos(std::min(1.0, d / (2.0 * r)));
        double start = std::atan2(dy, dx) - half;
        if (start < 0.0)
            start += kTwoPi;
        const double end = start + 2.0 * half;
        if (end >= kTwoPi) {
            ++base;
            events.push_back({start, +1});
            events.push_back({end - kTwoPi, -1});
        } else {
            events.push_back({start, +1});
            events.push_back({end, -1});
        }
    }

    auto offer = [&](double angle, std::size_t depth) {
        const UserLocation p{c.x + r * std::cos(angle), c.y + r * std::sin(angle)};
        if (!box.contains(p, 0.0))
            return;
        if (depth > best_depth) {
            best_depth = depth;
            best_points.clear();
        }
        if (depth == best_depth)
            best_points.push_back(p);
    };

    if (events.empty()) {
        offer(0.0, base);
        return;
    }
    std::sort(events.begin(), events.end(), [](const SweepEvent& l, const SweepEvent& r) {
        return l.angle < r.angle || (l.angle == r.angle && l.delta > r.delta);
    });

    std::size_t depth = base;
    std::size_t k = 0;
    while (k < events.size()) {
        const double group_angle = events[k].angle;
        std::size_t end = k;
        std::size_t starts = 0, ends = 0;
        while (end < events.size() && events[end].angle - group_angle <= kAngleTol) {
            (events[end].delta > 0 ? starts : ends) += 1;
            ++end;
        }
        if (starts > 0) {
            depth += starts;
            offer(group_angle, depth);
        }
        depth -= ends;
        k = end;
    }
}

}  // namespace

std::vector<UserLocation> coverage_candidates(std::span<const UserLocation> users, double r_max,
                                              const PositionBox& box)
{
    std::vector<UserLocation> out = box_candidates(users, r_max, box);
    if (r_max <= 0.0)
        return out;
    for (std::size_t i = 0; i < users.size(); ++i) {
        for (std::size_t j = i + 1; j < users.size(); ++j) {
            const double dx = users[j].x - users[i].x;
            const double dy = users[j].y - users[i].y;
            const double d = std::hypot(dx, dy);
            if (d == 0.0 || d > 2.0 * r_max + kRadiusTol)
                continue;
            const double along = 0.5 * d;
            const double across = std::sqrt(std::max(0.0, r_max * r_max - along * along));
            const double ux = dx / d, uy = dy / d;
            const double mx = users[i].x + along * ux, my = users[i].y + along * uy;
            for (double s : {-1.0, 1.0}) {
                const UserLocation p{mx - s * across * uy, my + s * across * ux};
                if (box.contains(p, 0.0))
                    out.push_back(p);
            }
        }
    }
    return out;
}

CoverageResult max_coverage_disk(std::span<const UserLocation> users, double r_max,
                                 const PositionBox& box)
{
    if (users.empty())
        throw std::invalid_argument("max_coverage_disk: no users");
    if (!(r_max >= 0.0))
        throw std::invalid_argument("max_coverage_disk: r_max must be non-negative");
    box.validate();

    std::size_t sweep_depth = 0;
    std::vector<UserLocation> points;
    if (r_max > 0.0)
        for (std::size_t i = 0; i < users.size(); ++i)
            sweep_circle(users, i, r_max, box, sweep_depth, points);
    for (const auto& p : box_candidates(users, r_max, box))
        points.push_back(p);

    std::size_t best = 0;
    std::vector<std::pair<UserLocation, std::vector<std::size_t>>> optimal;
    std::set<std::vector<std::size_t>> seen;
    for (const auto& p : points) {
        if (count_within(users, p, r_max) < best)
            continue;
        auto served = served_set(users, p, r_max);
        if (served.size() > best) {
            best = served.size();
            optimal.clear();
            seen.clear();
        }
        if (seen.insert(served).second)
            optimal.emplace_back(p, std::move(served));
    }

    CoverageResult result{box.project(users.front()), {}};
    if (best == 0)
        return result;

    bool have = false;
    Circle best_circle;
    for (auto& [center, served] : optimal) {
        std::vector<UserLocation> pts;
        pts.reserve(served.size());
        for (auto idx : served)
            pts.push_back(users[idx]);
        const Circle shrunk = shrink_radius(pts, box, r_max, center).circle;
        bool better = !have;
        if (have) {
            if (std::abs(shrunk.radius - best_circle.radius) > kRadiusTol)
                better = shrunk.radius < best_circle.radius;
            else
                better = std::pair(shrunk.center.x, shrunk.center.y) <
                         std::pair(best_circle.center.x, best_circle.center.y);
        }
        if (better) {
            have = true;
            best_circle = shrunk;
            result = {center, served};
        }
    }
    return result;
}

BruteForceResult brute_force_placement(std::span<const UserLocation> users, double r_max,
                                       const PositionBox& box, double grid_step)
{
    if (!(grid_step > 0.0))
        throw std::invalid_argument("grid_step must be positive");
    box.validate();

    BruteForceResult best{box.project(users.empty() ? UserLocation{} : users.front()), 0};
    auto consider = [&](const UserLocation& p) {
        const std::size_t n = count_within(users, p, r_max);
        if (n > best.count)
            best = {p, n};
    };
    const auto nx = static_cast<std::size_t>(std::floor((box.x_u - box.x_l) / grid_step));
    const auto ny = static_cast<std::size_t>(std::floor((box.y_u - box.y_l) / grid_step));
    for (std::size_t ix = 0; ix <= nx + 1; ++ix) {
        const double x = std::min(box.x_u, box.x_l + grid_step * static_cast<double>(ix));
        for (std::size_t iy = 0; iy <= ny + 1; ++iy)
            consider({x, std::min(box.y_u, box.y_l + grid_step * static_cast<double>(iy))});
    }
    for (const auto& p : coverage_candidates(users, r_max, box))
        consider(p);
    return best;
}

ShrunkDisk shrink_radius(std::span<const UserLocation> served_users, const PositionBox& box,
                         double r_max, const UserLocation& fallback_center)
{
    if (served_users.empty())
        return {{fallback_center, 0.0}, false};

    auto reach = [&](const UserLocation& c) {
        double r = 0.0;
        for (const auto& u : served_users)
            r = std::max(r, distance(c, u));
        return r;
    };

    const Circle mec = minimum_enclosing_circle(served_users);
    const UserLocation projected = box.project(mec.center);
    if (projected == mec.center)
        return {{mec.center, reach(mec.center)}, false};
    const double r = reach(projected);
    if (r <= r_max + kRadiusTol)
        return {{projected, r}, true};
    return {{fallback_center, reach(fallback_center)}, true};
}

Placement place_drone(std::span<const UserLocation> users, const Environment& env,
                      const LinkBudget& budget, const PositionBox& box,
                      const AltitudeBounds& altitude, const SolverConfig& config)
{
    return place_drone(users, env, budget, box, altitude, find_alpha_star(env, budget, config));
}

Placement place_drone(std::span<const UserLocation> users, const Environment&,
                      const LinkBudget&, const PositionBox& box,
                      const AltitudeBounds& altitude, const AlphaSolution& alpha)
{
    if (users.empty())
        throw std::invalid_argument("place_drone: no users");
    box.validate();
    altitude.validate();

    const double a = alpha.alpha_star;
    const double inf = std::numeric_limits<double>::infinity();
    const double r_ceiling_alt = a > 0.0 ? altitude.h_u / a : inf;
    const double r_upper = std::min(alpha.max_radius, r_ceiling_alt);
    const double r_lower = a > 0.0 ? altitude.h_l / a : (altitude.h_l > 0.0 ? inf : 0.0);
    if (r_lower > r_upper) {
        std::ostringstream msg;
        msg.precision(10);
        if (a == 0.0)
            msg << "altitude floor h_l = " << altitude.h_l << " m is unreachable with alpha* = 0";
        else
            msg << "altitude floor h_l = " << altitude.h_l << " m needs radius h_l/alpha* = "
                << r_lower << " m, above the maximum coverage radius sqrt(Gamma(alpha*)) = "
                << alpha.max_radius << " m";
        throw InfeasibleError(msg.str());
    }

    const CoverageResult cov = max_coverage_disk(users, r_upper, box);

    Placement p;
    p.alpha_star = a;
    p.served = cov.served;
    p.served_count = cov.served.size();

    Circle disk{cov.center, 0.0};
    if (!cov.served.empty()) {
        std::vector<UserLocation> pts;
        pts.reserve(cov.served.size());
        for (auto idx : cov.served)
            pts.push_back(users[idx]);
        const ShrunkDisk shrunk = shrink_radius(pts, box, r_upper, cov.center);
        disk = shrunk.circle;
        p.center_projected = shrunk.center_projected;
    }
    p.x_d = disk.center.x;
    p.y_d = disk.center.y;
    p.radius = disk.radius;
    if (r_lower > p.radius) {
        p.radius = r_lower;
        p.radius_floor_applied = true;
    }

    const double h = a * p.radius;
    p.h = std::clamp(h, altitude.h_l, altitude.h_u);
    p.altitude_clamped = std::abs(p.h - h) > 1e-9 * std::max(1.0, std::abs(h));
    return p;
}

bool verify_placement(const Placement& placement, std::span<const UserLocation> users,
                      const Environment& env, const LinkBudget& budget, const PositionBox& box,
                      const AltitudeBounds& altitude, double tol_db)
{
    const UserLocation center{placement.x_d, placement.y_d};
    if (!box.contains(center))
        return false;
    if (!(placement.h >= altitude.h_l - kRadiusTol && placement.h <= altitude.h_u + kRadiusTol))
        return false;
    if (!(placement.radius >= 0.0) || placement.served_count != placement.served.size())
        return false;
    if (!std::is_sorted(placement.served.begin(), placement.served.end()) ||
        std::adjacent_find(placement.served.begin(), placement.served.end()) !=
            placement.served.end())
        return false;
    for (auto idx : placement.served) {
        if (idx >= users.size())
            return false;
        const double r = distance(users[idx], center);
        if (r > placement.radius + kRadiusTol)
            return false;
        try {
            if (!is_covered(env, budget, placement.h, r, tol_db))
                return false;
        } catch (const std::domain_error&) {
            return false;
        }
    }
    return true;
}

}  // namespace dronecell
