#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dronecell {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

/// Air-to-ground propagation environment.
///
/// `a` and `b` shape the LoS-probability sigmoid over the elevation angle in
/// degrees; the eta terms are the mean excess losses (dB) on top of free
/// space for LoS and NLoS links.
struct Environment {
    std::string name;
    double a = 0.0;
    double b = 0.0;
    double eta_los_db = 0.0;
    double eta_nlos_db = 0.0;

    /// Throws std::invalid_argument when a <= 0, b <= 0, eta_los_db < 0 or
    /// eta_nlos_db < eta_los_db.
    void validate() const;

    double a_db() const { return eta_los_db - eta_nlos_db; }
};

/// Suburban, Urban, Dense Urban, High-rise Urban, in that order.
std::vector<Environment> environment_presets();

/// Case-insensitive lookup of "suburban", "urban", "dense-urban",
/// "highrise-urban". Throws std::invalid_argument for anything else.
Environment environment_by_name(std::string_view name);

/// Canonical key ("dense-urban", ...) for a preset name; custom
/// environments are returned lower-cased with spaces replaced by '-'.
std::string environment_key(const Environment& env);

/// QoS threshold and carrier, plus the two constants folded out of the
/// pathloss expression. A and B are derived once at construction.
class LinkBudget {
public:
    LinkBudget(const Environment& env, double gamma_db, double fc_hz);

    double gamma_db() const { return gamma_db_; }
    double fc_hz() const { return fc_hz_; }
    double speed_of_light() const { return kSpeedOfLight; }
    double A_db() const { return A_db_; }
    double B_db() const { return B_db_; }

    static double compute_A(const Environment& env);
    static double compute_B(const Environment& env, double fc_hz);

private:
    double gamma_db_;
    double fc_hz_;
    double A_db_;
    double B_db_;
};

struct UserLocation {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const UserLocation&, const UserLocation&) = default;
};

/// Elevation angle in degrees seen from a ground point at horizontal
/// distance r below a platform at altitude h. 90 when r == 0.
double elevation_deg(double h, double r);

/// LoS probability for an elevation angle in degrees.
/// Throws std::domain_error outside [0, 90].
double los_probability(const Environment& env, double theta_deg);

/// Mean pathloss in dB. Throws std::domain_error for negative inputs or
/// for h == r == 0.
double pathloss_db(const Environment& env, const LinkBudget& budget, double h, double r);

/// Coverage tolerance used for boundary decisions.
inline constexpr double kDefaultTolDb = 1e-9;

/// pathloss_db(h, r) <= gamma + tol_db. A zero link distance (h == r == 0,
/// e.g. a drone parked on its only user) counts as covered; negative inputs
/// throw std::domain_error.
bool is_covered(const Environment& env, const LinkBudget& budget, double h, double r,
                double tol_db = kDefaultTolDb);

}  // namespace dronecell
