#pragma once

#include <cstddef>
#include <vector>

#include "dronecell/channel.hpp"

namespace dronecell {

/// tan(89.9 deg): upper end of the altitude-to-radius search bracket.
double alpha_upper_bound();

struct SolverConfig {
    double epsilon = 1e-5;
    int max_iterations = 100;
    std::size_t grid_points = 1'000'000;
    double tol_db = kDefaultTolDb;

    void validate() const;
};

/// Optimal altitude-to-radius ratio and the coverage radius it allows.
struct AlphaSolution {
    double alpha_star = 0.0;
    double gamma_at_star = 0.0;  // m^2
    double max_radius = 0.0;     // m, sqrt(gamma_at_star)
    int iterations = 0;
    bool converged = false;
};

/// Intermediate quantities of the closed-form derivative of Gamma.
struct DerivativeTerms {
    double delta = 1.0;   // 1 / P(alpha)
    double lambda = 0.0;  // base-10 exponent of the numerator of Gamma
    double omega = 1.0;   // (alpha^2 + 1)^2
    double k = 0.0;       // degrees-per-radian times ln(10)/10
};

/// (180/pi) * ln(10) / 10.
double derivative_constant_k();

/// Squared largest coverage radius reachable at ratio alpha = h/R.
/// Throws std::domain_error for negative alpha.
double gamma_value(const Environment& env, const LinkBudget& budget, double alpha);

DerivativeTerms derivative_terms(const Environment& env, const LinkBudget& budget, double alpha);

/// d Gamma / d alpha in closed form. Throws std::domain_error for negative alpha.
double gamma_derivative(const Environment& env, const LinkBudget& budget, double alpha);

/// Bisection on the sign of d Gamma / d alpha over [0, tan 89.9 deg].
///
/// Stops when the midpoint derivative is (numerically) zero, when the bracket
/// shrinks to epsilon, or after max_iterations updates; the last case returns
/// the midpoint with converged == false. A derivative that is already
/// non-positive at 0 yields alpha* = 0, and one that is still positive at the
/// upper end yields alpha* = tan 89.9 deg, both reported as converged.
AlphaSolution find_alpha_star(const Environment& env, const LinkBudget& budget,
                              const SolverConfig& config = {});

/// Exhaustive argmax of Gamma over grid_points uniformly spaced ratios in
/// [0, tan 89.9 deg]. Independent of the derivative.
double grid_oracle_alpha_star(const Environment& env, const LinkBudget& budget,
                              std::size_t grid_points);

struct GammaCurvePoint {
    double alpha = 0.0;
    double gamma_m2 = 0.0;
    bool peak = false;
};

/// Gamma sampled uniformly on [0, alpha_max]. For three or more samples the
/// exact maximizer is merged in (flagged) when it falls strictly inside the
/// range; with two samples only the endpoints are returned.
std::vector<GammaCurvePoint> gamma_curve(const Environment& env, const LinkBudget& budget,
                                         std::size_t sample_count,
                                         double alpha_max = alpha_upper_bound(),
                                         const SolverConfig& config = {});

}  // namespace dronecell
