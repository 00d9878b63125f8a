#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dronecell/alpha.hpp"
#include "dronecell/channel.hpp"
#include "dronecell/coverage.hpp"

namespace dronecell {

/// Everything needed to place one drone-cell.
struct Scenario {
    std::vector<UserLocation> users;
    PositionBox box;
    AltitudeBounds altitude;
    Environment environment;
    double gamma_db = 100.0;
    double fc_hz = 2.5e9;
    SolverConfig config;

    void validate() const;
    LinkBudget budget() const { return {environment, gamma_db, fc_hz}; }
};

struct MonteCarloStats {
    std::size_t runs = 0;
    std::vector<std::size_t> per_run_counts;  // indexed by run
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double ci_half_width = 0.0;
};

/// SplitMix64 finalizer of seed + (run + 1) * golden gamma.
std::uint64_t child_seed(std::uint64_t seed, std::uint64_t run);

/// n users i.i.d. uniform over the box, drawn from std::mt19937_64(seed)
/// with 53-bit mantissa doubles (x then y per user).
std::vector<UserLocation> generate_users(std::size_t n, const PositionBox& box,
                                         std::uint64_t seed);

/// Normal-approximation interval mean +/- z(level) * s / sqrt(n), s the
/// sample standard deviation. Fewer than two samples give (mean, mean).
std::pair<double, double> confidence_interval(const std::vector<double>& samples,
                                              double level = 0.95);

/// Per run r: users from child_seed(seed, r), place_drone on the template,
/// record served_count. The template's own users are ignored. alpha* is
/// solved once and shared by all runs.
MonteCarloStats run_monte_carlo(const Scenario& base, std::size_t n_users, std::size_t runs,
                                std::uint64_t seed);

}  // namespace dronecell
