#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dronecell/alpha.hpp"
#include "dronecell/channel.hpp"
#include "dronecell/geometry.hpp"

namespace dronecell {

/// Users at horizontal distance <= R + kRadiusTol from the center are inside.
inline constexpr double kRadiusTol = 1e-9;

/// Allowed horizontal region for the drone center.
struct PositionBox {
    double x_l = -1450.0;
    double x_u = 1450.0;
    double y_l = -1258.0;
    double y_u = 1258.0;

    void validate() const;
    bool contains(const UserLocation& p, double tol = kRadiusTol) const;
    UserLocation project(const UserLocation& p) const;
};

struct AltitudeBounds {
    double h_l = 0.0;
    double h_u = std::numeric_limits<double>::infinity();

    void validate() const;
};

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Placement {
    double x_d = 0.0;
    double y_d = 0.0;
    double h = 0.0;
    double radius = 0.0;
    std::vector<std::size_t> served;  // sorted user indices
    std::size_t served_count = 0;
    double alpha_star = 0.0;
    // R was raised to h_l / alpha* after shrinking.
    bool radius_floor_applied = false;
    // h = alpha* * R fell outside the altitude bounds and was clamped.
    bool altitude_clamped = false;
    // The enclosing-circle center left the box and was projected back.
    bool center_projected = false;
};

struct CoverageResult {
    UserLocation center;
    std::vector<std::size_t> served;  // sorted
};

/// Center in the box covering the most users with a disk of radius r_max.
///
/// Exact: every maximal cell of the disk arrangement clipped to the box has a
/// vertex among the candidate centers (pairwise circle intersections found by
/// an angular sweep around each user circle, circle/box-edge crossings, box
/// corners, user positions projected into the box). Among equal counts the
/// served set whose shrunk circle is smallest wins, then the lexicographically
/// smallest shrunk center. Throws std::invalid_argument on empty users or
/// negative r_max.
CoverageResult max_coverage_disk(std::span<const UserLocation> users, double r_max,
                                 const PositionBox& box);

struct BruteForceResult {
    UserLocation center;
    std::size_t count = 0;
};

/// Direct-count search over a regular grid of step grid_step covering the box
/// plus every candidate center of the exact enumeration. Slow; for testing.
BruteForceResult brute_force_placement(std::span<const UserLocation> users, double r_max,
                                       const PositionBox& box, double grid_step);

/// Candidate centers used by the exact enumeration, each counted directly.
std::vector<UserLocation> coverage_candidates(std::span<const UserLocation> users, double r_max,
                                              const PositionBox& box);

/// Number of users within r + kRadiusTol of center.
std::size_t count_within(std::span<const UserLocation> users, const UserLocation& center,
                         double r);

struct ShrunkDisk {
    Circle circle;
    bool center_projected = false;
};

/// Smallest circle around the served users with its center in the box.
///
/// Uses the minimum enclosing circle, projecting the center into the box when
/// needed. If projection pushes the radius past r_max, falls back to
/// fallback_center with the smallest radius that reaches every served user.
ShrunkDisk shrink_radius(std::span<const UserLocation> served_users, const PositionBox& box,
                         double r_max, const UserLocation& fallback_center);

/// find_alpha_star, then the reduced coverage problem at radius
/// min(sqrt(Gamma(alpha*)), h_u / alpha*), then h = alpha* * R.
/// Throws InfeasibleError when h_l / alpha* exceeds that radius.
Placement place_drone(std::span<const UserLocation> users, const Environment& env,
                      const LinkBudget& budget, const PositionBox& box,
                      const AltitudeBounds& altitude, const SolverConfig& config = {});

/// Same, with alpha* already known.
Placement place_drone(std::span<const UserLocation> users, const Environment& env,
                      const LinkBudget& budget, const PositionBox& box,
                      const AltitudeBounds& altitude, const AlphaSolution& alpha);

/// Re-checks a placement through the pathloss model: center in box, altitude
/// in bounds, and every served user within radius and with pathloss <= gamma.
bool verify_placement(const Placement& placement, std::span<const UserLocation> users,
                      const Environment& env, const LinkBudget& budget, const PositionBox& box,
                      const AltitudeBounds& altitude, double tol_db = kDefaultTolDb);

}  // namespace dronecell
