#include "dronecell/alpha.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dronecell {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

// |dGamma/dalpha| at or below this counts as an exact root.
constexpr double kZeroDerivative = 1e-15;

int sign(double v)
{
    return (v > 0.0) - (v < 0.0);
}

void require_non_negative(double alpha)
{
    if (!(alpha >= 0.0))
        throw std::domain_error("alpha must be non-negative");
}

}  // namespace

double alpha_upper_bound()
{
    return std::tan(89.9 / kDegPerRad);
}

double derivative_constant_k()
{
    return kDegPerRad * std::numbers::ln10 / 10.0;
}

void SolverConfig::validate() const
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    if (max_iterations < 1)
        throw std::invalid_argument("max_iterations must be >= 1");
    if (grid_points < 1000)
        throw std::invalid_argument("grid_points must be >= 1000");
    if (!(tol_db >= 0.0))
        throw std::invalid_argument("tol_db must be non-negative");
}

double gamma_value(const Environment& env, const LinkBudget& budget, double alpha)
{
    require_non_negative(alpha);
    const double p = los_probability(env, std::atan(alpha) * kDegPerRad);
    const double exponent = (budget.gamma_db() - (budget.A_db() * p + budget.B_db())) / 10.0;
    return std::pow(10.0, exponent) / (1.0 + alpha * alpha);
}

DerivativeTerms derivative_terms(const Environment& env, const LinkBudget& budget, double alpha)
{
    require_non_negative(alpha);
    DerivativeTerms t;
    t.delta = env.a * std::exp(env.b * (env.a - kDegPerRad * std::atan(alpha))) + 1.0;
    t.lambda = (budget.gamma_db() - budget.B_db() - budget.A_db() / t.delta) / 10.0;
    const double s = alpha * alpha + 1.0;
    t.omega = s * s;
    t.k = derivative_constant_k();
    return t;
}

double gamma_derivative(const Environment& env, const LinkBudget& budget, double alpha)
{
    const DerivativeTerms t = derivative_terms(env, budget, alpha);
    const double d2 = t.delta * t.delta;
    return -(std::pow(10.0, t.lambda) / (t.omega * d2)) *
           (2.0 * alpha * d2 + budget.A_db() * env.b * t.k * (t.delta - 1.0));
}

AlphaSolution find_alpha_star(const Environment& env, const LinkBudget& budget,
                              const SolverConfig& config)
{
    config.validate();

    auto finish = [&](double alpha, int iterations, bool converged) {
        AlphaSolution s;
        s.alpha_star = alpha;
        s.gamma_at_star = gamma_value(env, budget, alpha);
        s.max_radius = std::sqrt(s.gamma_at_star);
        s.iterations = iterations;
        s.converged = converged;
        return s;
    };

    double lo = 0.0;
    double hi = alpha_upper_bound();
    if (gamma_derivative(env, budget, lo) <= 0.0)
        return finish(lo, 0, true);
    if (gamma_derivative(env, budget, hi) > 0.0)
        return finish(hi, 0, true);

    int n = 0;
    double mid = 0.5 * (lo + hi);
    while (n <= config.max_iterations) {
        mid = 0.5 * (lo + hi);
        const double d_mid = gamma_derivative(env, budget, mid);
        if (std::abs(d_mid) <= kZeroDerivative || hi - lo <= config.epsilon)
            return finish(mid, n, true);
        ++n;
        if (sign(d_mid) == sign(gamma_derivative(env, budget, lo)))
            lo = mid;
        else
            hi = mid;
    }
    return finish(mid, n, false);
}

double grid_oracle_alpha_star(const Environment& env, const LinkBudget& budget,
                              std::size_t grid_points)
{
    if (grid_points < 1000)
        throw std::invalid_argument("grid_points must be >= 1000");
    const double step = alpha_upper_bound() / static_cast<double>(grid_points - 1);
    double best_alpha = 0.0;
    double best_value = gamma_value(env, budget, 0.0);
    for (std::size_t i = 1; i < grid_points; ++i) {
        const double alpha = step * static_cast<double>(i);
        const double v = gamma_value(env, budget, alpha);
        if (v > best_value) {
            best_value = v;
            best_alpha = alpha;
        }
    }
    return best_alpha;
}

std::vector<GammaCurvePoint> gamma_curve(const Environment& env, const LinkBudget& budget,
                                         std::size_t sample_count, double alpha_max,
                                         const SolverConfig& config)
{
    if (sample_count < 2)
        throw std::invalid_argument("gamma curve needs at least 2 samples");
    if (!(alpha_max > 0.0))
        throw std::invalid_argument("alpha_max must be positive");

    std::vector<GammaCurvePoint> curve;
    curve.reserve(sample_count + 1);
    const double step = alpha_max / static_cast<double>(sample_count - 1);
    for (std::size_t i = 0; i < sample_count; ++i) {
        const double alpha = i + 1 == sample_count ? alpha_max : step * static_cast<double>(i);
        curve.push_back({alpha, gamma_value(env, budget, alpha), false});
    }
    if (sample_count < 3)
        return curve;

    const double star = find_alpha_star(env, budget, config).alpha_star;
    if (!(star > 0.0 && star < alpha_max))
        return curve;
    auto it = curve.begin();
    while (it != curve.end() && it->alpha < star)
        ++it;
    if (it != curve.end() && it->alpha == star)
        it->peak = true;
    else
        curve.insert(it, {star, gamma_value(env, budget, star), true});
    return curve;
}

}  // namespace dronecell
