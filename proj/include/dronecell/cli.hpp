#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dronecell/coverage.hpp"
#include "dronecell/scenario.hpp"

namespace dronecell::cli {

inline constexpr std::string_view kVersion = "1.0.0";

enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kInfeasible = 3,
    kInternal = 4,
};

/// Malformed or out-of-contract input; maps to kValidation.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Builds a Scenario from a scenario document. Unknown keys, wrong types and
/// invalid values raise ValidationError.
Scenario parse_scenario(const nlohmann::json& doc);

struct LoadedScenario {
    Scenario scenario;
    std::string bytes;  // raw file contents, for the digest
};

LoadedScenario load_scenario_file(const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);

struct Provenance {
    std::string input_sha256;
    std::string version{kVersion};
};

nlohmann::ordered_json placement_to_json(const Placement& placement, const Scenario& scenario,
                                         const AlphaSolution& alpha, const Provenance& provenance);

/// Round-trip decimal text for a double ("%.17g").
std::string format_double(double v);

/// Entry point shared by the dronecell executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dronecell::cli
