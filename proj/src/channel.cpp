#include "dronecell/channel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace dronecell {

void Environment::validate() const
{
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("environment '" + name + "': a and b must be positive");
    if (!(eta_los_db >= 0.0))
        throw std::invalid_argument("environment '" + name + "': eta_los_db must be >= 0");
    if (!(eta_nlos_db >= eta_los_db))
        throw std::invalid_argument("environment '" + name + "': eta_nlos_db must be >= eta_los_db");
}

std::vector<Environment> environment_presets()
{
    return {
        {"Suburban", 4.88, 0.43, 0.1, 21.0},
        {"Urban", 9.61, 0.16, 1.0, 20.0},
        {"Dense Urban", 12.08, 0.11, 1.6, 23.0},
        {"High-rise Urban", 27.23, 0.08, 2.3, 34.0},
    };
}

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string environment_key(const Environment& env)
{
    std::string key = lower(env.name);
    std::replace(key.begin(), key.end(), ' ', '-');
    if (key == "high-rise-urban")
        return "highrise-urban";
    return key;
}

Environment environment_by_name(std::string_view name)
{
    const std::string wanted = lower(name);
    for (auto& env : environment_presets()) {
        if (environment_key(env) == wanted)
            return env;
    }
    throw std::invalid_argument("unknown environment '" + std::string(name) +
                                "' (expected suburban, urban, dense-urban, highrise-urban)");
}

LinkBudget::LinkBudget(const Environment& env, double gamma_db, double fc_hz)
    : gamma_db_(gamma_db), fc_hz_(fc_hz), A_db_(compute_A(env)), B_db_(compute_B(env, fc_hz))
{
    if (!std::isfinite(gamma_db))
        throw std::invalid_argument("gamma_db must be finite");
    if (!(fc_hz > 0.0) || !std::isfinite(fc_hz))
        throw std::invalid_argument("fc_hz must be positive");
}

double LinkBudget::compute_A(const Environment& env)
{
    return env.eta_los_db - env.eta_nlos_db;
}

double LinkBudget::compute_B(const Environment& env, double fc_hz)
{
    return 20.0 * std::log10(4.0 * std::numbers::pi * fc_hz / kSpeedOfLight) + env.eta_nlos_db;
}

double elevation_deg(double h, double r)
{
    if (r == 0.0)
        return 90.0;
    return std::min(90.0, std::atan(h / r) * (180.0 / std::numbers::pi));
}

double los_probability(const Environment& env, double theta_deg)
{
    if (!(theta_deg >= 0.0 && theta_deg <= 90.0))
        throw std::domain_error("elevation angle outside [0, 90] degrees");
    return 1.0 / (1.0 + env.a * std::exp(-env.b * (theta_deg - env.a)));
}

double pathloss_db(const Environment& env, const LinkBudget& budget, double h, double r)
{
    if (!(h >= 0.0) || !(r >= 0.0))
        throw std::domain_error("altitude and horizontal distance must be non-negative");
    if (h == 0.0 && r == 0.0)
        throw std::domain_error("zero link distance");
    const double p = los_probability(env, elevation_deg(h, r));
    return 20.0 * std::log10(std::hypot(h, r)) + budget.A_db() * p + budget.B_db();
}

bool is_covered(const Environment& env, const LinkBudget& budget, double h, double r, double tol_db)
{
    // Zero link distance satisfies h^2 + r^2 <= 10^((gamma - A P - B) / 10).
    if (h == 0.0 && r == 0.0)
        return true;
    return pathloss_db(env, budget, h, r) <= budget.gamma_db() + tol_db;
}

}  // namespace dronecell
