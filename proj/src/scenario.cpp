#include "dronecell/scenario.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace dronecell {

void Scenario::validate() const
{
    if (users.empty())
        throw std::invalid_argument("scenario has no users");
    for (const auto& u : users)
        if (!std::isfinite(u.x) || !std::isfinite(u.y))
            throw std::invalid_argument("user coordinates must be finite");
    box.validate();
    altitude.validate();
    environment.validate();
    config.validate();
    (void)budget();
}

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t run)
{
    std::uint64_t z = seed + (run + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<UserLocation> generate_users(std::size_t n, const PositionBox& box, std::uint64_t seed)
{
    if (n == 0)
        throw std::invalid_argument("generate_users: n must be >= 1");
    box.validate();
    std::mt19937_64 rng(seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<UserLocation> users(n);
    for (auto& u : users) {
        u.x = box.x_l + (box.x_u - box.x_l) * unit();
        u.y = box.y_l + (box.y_u - box.y_l) * unit();
    }
    return users;
}

std::pair<double, double> confidence_interval(const std::vector<double>& samples, double level)
{
    if (samples.empty())
        throw std::invalid_argument("confidence_interval: no samples");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("confidence_interval: level must be in (0, 1)");
    const double n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    if (samples.size() < 2)
        return {mean, mean};
    double ss = 0.0;
    for (double v : samples)
        ss += (v - mean) * (v - mean);
    const double s = std::sqrt(ss / (n - 1.0));
    const double z = boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * level);
    const double half = z * s / std::sqrt(n);
    return {mean - half, mean + half};
}

MonteCarloStats run_monte_carlo(const Scenario& base, std::size_t n_users, std::size_t runs,
                                std::uint64_t seed)
{
    if (runs < 1)
        throw std::invalid_argument("run_monte_carlo: runs must be >= 1");
    base.box.validate();
    base.altitude.validate();
    base.environment.validate();

    const LinkBudget budget = base.budget();
    const AlphaSolution alpha = find_alpha_star(base.environment, budget, base.config);

    MonteCarloStats stats;
    stats.runs = runs;
    stats.per_run_counts.reserve(runs);
    std::vector<double> samples;
    samples.reserve(runs);
    for (std::size_t r = 0; r < runs; ++r) {
        const auto users = generate_users(n_users, base.box, child_seed(seed, r));
        try {
            const Placement p =
                place_drone(users, base.environment, budget, base.box, base.altitude, alpha);
            stats.per_run_counts.push_back(p.served_count);
            samples.push_back(static_cast<double>(p.served_count));
        } catch (const InfeasibleError& e) {
            throw InfeasibleError("run " + std::to_string(r) + ": " + e.what());
        }
    }
    const auto [low, high] = confidence_interval(samples, 0.95);
    stats.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(runs);
    stats.ci_low = low;
    stats.ci_high = high;
    stats.ci_half_width = 0.5 * (high - low);
    return stats;
}

}  // namespace dronecell
