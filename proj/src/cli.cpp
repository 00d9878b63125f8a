#include "dronecell/cli.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace dronecell::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void reject_unknown_keys(const json& obj, std::string_view where,
                         std::initializer_list<std::string_view> allowed)
{
    if (!obj.is_object())
        throw ValidationError(std::string(where) + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto a : allowed)
            ok = ok || key == a;
        if (!ok)
            throw ValidationError(std::string(where) + ": unknown field '" + key + "'");
    }
}

double number(const json& obj, const char* key, std::string_view where)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ValidationError(std::string(where) + ": missing field '" + key + "'");
    if (!it->is_number())
        throw ValidationError(std::string(where) + "." + key + ": expected a number");
    const double v = it->get<double>();
    if (!std::isfinite(v))
        throw ValidationError(std::string(where) + "." + key + ": must be finite");
    return v;
}

double number_or(const json& obj, const char* key, double fallback, std::string_view where)
{
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::uint64_t unsigned_integer(const json& obj, const char* key, std::string_view where)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ValidationError(std::string(where) + ": missing field '" + key + "'");
    if (!it->is_number_unsigned())
        throw ValidationError(std::string(where) + "." + key + ": expected a non-negative integer");
    return it->get<std::uint64_t>();
}

Environment parse_environment(const json& v)
{
    if (v.is_string()) {
        try {
            return environment_by_name(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
    }
    reject_unknown_keys(v, "environment", {"name", "a", "b", "eta_los_db", "eta_nlos_db"});
    Environment env;
    if (!v.contains("name") || !v["name"].is_string())
        throw ValidationError("environment.name: expected a string");
    env.name = v["name"].get<std::string>();
    env.a = number(v, "a", "environment");
    env.b = number(v, "b", "environment");
    env.eta_los_db = number(v, "eta_los_db", "environment");
    env.eta_nlos_db = number(v, "eta_nlos_db", "environment");
    return env;
}

SolverConfig parse_solver(const json& v)
{
    reject_unknown_keys(v, "solver", {"epsilon", "max_iterations", "grid_points", "tol_db"});
    SolverConfig c;
    c.epsilon = number_or(v, "epsilon", c.epsilon, "solver");
    if (v.contains("max_iterations")) {
        const auto n = unsigned_integer(v, "max_iterations", "solver");
        if (n > 1'000'000)
            throw ValidationError("solver.max_iterations: too large");
        c.max_iterations = static_cast<int>(n);
    }
    if (v.contains("grid_points"))
        c.grid_points = unsigned_integer(v, "grid_points", "solver");
    c.tol_db = number_or(v, "tol_db", c.tol_db, "solver");
    return c;
}

std::string output_dir_default()
{
    const char* env = std::getenv("DRONECELL_OUT_DIR");
    return env && *env ? env : ".";
}

void write_file(const fs::path& path, std::string_view contents)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << contents;
    if (!f)
        throw std::runtime_error("failed writing " + path.string());
}

std::vector<Environment> select_environments(const std::vector<std::string>& names)
{
    std::vector<Environment> out;
    for (const auto& n : names) {
        if (n == "all" || n == "ALL" || n == "All") {
            auto all = environment_presets();
            out.insert(out.end(), all.begin(), all.end());
        } else {
            try {
                out.push_back(environment_by_name(n));
            } catch (const std::invalid_argument& e) {
                throw ValidationError(e.what());
            }
        }
    }
    return out;
}

SolverConfig overlay(SolverConfig c, const std::optional<double>& epsilon,
                     const std::optional<int>& max_iter)
{
    if (epsilon)
        c.epsilon = *epsilon;
    if (max_iter)
        c.max_iterations = *max_iter;
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return c;
}

std::string dump(const ordered_json& doc)
{
    return doc.dump(2) + "\n";
}

struct SolveOptions {
    std::string scenario;
    std::string out;
    std::string env;
};

int cmd_solve(const SolveOptions& o, std::ostream& out)
{
    const LoadedScenario loaded = load_scenario_file(o.scenario);
    Provenance prov{sha256_hex(loaded.bytes)};

    std::vector<Scenario> jobs;
    if (o.env.empty()) {
        jobs.push_back(loaded.scenario);
    } else {
        for (auto& env : select_environments({o.env})) {
            Scenario s = loaded.scenario;
            s.environment = env;
            jobs.push_back(std::move(s));
        }
    }
    const bool many = jobs.size() > 1;

    std::vector<std::pair<fs::path, std::string>> outputs;
    for (const auto& s : jobs) {
        const LinkBudget budget = s.budget();
        const AlphaSolution alpha = find_alpha_star(s.environment, budget, s.config);
        const Placement p = place_drone(s.users, s.environment, budget, s.box, s.altitude, alpha);
        if (!verify_placement(p, s.users, s.environment, budget, s.box, s.altitude,
                              s.config.tol_db))
            throw std::logic_error("placement failed independent pathloss verification");

        const std::string name = "placement_" + environment_key(s.environment) + ".json";
        fs::path path;
        if (many)
            path = fs::path(o.out.empty() ? output_dir_default() : o.out) / name;
        else
            path = o.out.empty() ? fs::path(output_dir_default()) / name : fs::path(o.out);
        outputs.emplace_back(path, dump(placement_to_json(p, s, alpha, prov)));
    }
    for (const auto& [path, text] : outputs) {
        write_file(path, text);
        out << path.string() << "\n";
    }
    return kOk;
}

int cmd_alpha_star(const std::string& env_name, double gamma, double fc, const SolverConfig& config,
                   const std::string& out_path, std::ostream& out)
{
    if (env_name == "all")
        throw ValidationError("alpha-star takes a single environment");
    const Environment env = select_environments({env_name}).at(0);
    const LinkBudget budget(env, gamma, fc);
    const AlphaSolution s = find_alpha_star(env, budget, config);
    ordered_json doc;
    doc["format"] = "dronecell.alpha/1";
    doc["environment"] = environment_key(env);
    doc["gamma_db"] = gamma;
    doc["fc_hz"] = fc;
    doc["alpha_star"] = s.alpha_star;
    doc["elevation_deg"] = elevation_deg(s.alpha_star, 1.0);
    doc["gamma_at_star"] = s.gamma_at_star;
    doc["max_radius"] = s.max_radius;
    doc["iterations"] = s.iterations;
    doc["converged"] = s.converged;
    const std::string text = dump(doc);
    if (out_path.empty())
        out << text;
    else
        write_file(out_path, text);
    return kOk;
}

int cmd_gamma_curve(const std::string& env_sel, double gamma, double fc, std::size_t samples,
                    double alpha_max, const SolverConfig& config, const std::string& out_dir,
                    std::ostream& out)
{
    if (samples < 2)
        throw ValidationError("--samples must be >= 2");
    if (!(alpha_max > 0.0) || alpha_max > alpha_upper_bound())
        throw ValidationError("--alpha-max must be in (0, tan 89.9 deg]");
    const fs::path dir = out_dir.empty() ? fs::path(output_dir_default()) : fs::path(out_dir);
    for (const auto& env : select_environments({env_sel})) {
        const LinkBudget budget(env, gamma, fc);
        std::string text = "alpha,gamma_m2,peak\n";
        for (const auto& pt : gamma_curve(env, budget, samples, alpha_max, config))
            text += format_double(pt.alpha) + "," + format_double(pt.gamma_m2) + "," +
                    (pt.peak ? "1" : "0") + "\n";
        const fs::path path = dir / ("gamma_curve_" + environment_key(env) + ".csv");
        write_file(path, text);
        out << path.string() << "\n";
    }
    return kOk;
}

struct MonteCarloOptions {
    std::string scenario;
    std::size_t users = 40;
    std::size_t runs = 100;
    std::uint64_t seed = 1;
    std::vector<std::string> envs{"all"};
    std::vector<double> gammas{90.0, 100.0, 125.0};
    double fc = 2.5e9;
    std::string out;
};

int cmd_montecarlo(const MonteCarloOptions& o, const SolverConfig& config, std::ostream& out)
{
    if (o.users < 1 || o.runs < 1)
        throw ValidationError("--users and --runs must be >= 1");
    Scenario base;
    if (!o.scenario.empty())
        base = load_scenario_file(o.scenario).scenario;
    base.config = config;
    base.fc_hz = o.fc;

    std::string text = "environment,gamma_db,fc_hz,users,runs,seed,mean,ci_low,ci_high,ci_half_width\n";
    for (const auto& env : select_environments(o.envs)) {
        for (double gamma : o.gammas) {
            Scenario s = base;
            s.environment = env;
            s.gamma_db = gamma;
            const MonteCarloStats st = run_monte_carlo(s, o.users, o.runs, o.seed);
            text += environment_key(env) + "," + format_double(gamma) + "," + format_double(o.fc) +
                    "," + std::to_string(o.users) + "," + std::to_string(o.runs) + "," +
                    std::to_string(o.seed) + "," + format_double(st.mean) + "," +
                    format_double(st.ci_low) + "," + format_double(st.ci_high) + "," +
                    format_double(st.ci_half_width) + "\n";
        }
    }
    const fs::path path =
        o.out.empty() ? fs::path(output_dir_default()) / "montecarlo.csv" : fs::path(o.out);
    write_file(path, text);
    out << path.string() << "\n";
    return kOk;
}

}  // namespace

Scenario parse_scenario(const json& doc)
{
    reject_unknown_keys(doc, "scenario",
                        {"users", "generate", "box", "altitude", "environment", "gamma_db",
                         "fc_hz", "solver"});
    Scenario s;
    if (doc.contains("box")) {
        const json& b = doc["box"];
        reject_unknown_keys(b, "box", {"x_l", "x_u", "y_l", "y_u"});
        s.box = {number(b, "x_l", "box"), number(b, "x_u", "box"), number(b, "y_l", "box"),
                 number(b, "y_u", "box")};
    }
    if (doc.contains("altitude")) {
        const json& a = doc["altitude"];
        reject_unknown_keys(a, "altitude", {"h_l", "h_u"});
        s.altitude.h_l = number_or(a, "h_l", s.altitude.h_l, "altitude");
        s.altitude.h_u = number_or(a, "h_u", s.altitude.h_u, "altitude");
    }
    if (!doc.contains("environment"))
        throw ValidationError("scenario: missing field 'environment'");
    s.environment = parse_environment(doc["environment"]);
    s.gamma_db = number(doc, "gamma_db", "scenario");
    s.fc_hz = number_or(doc, "fc_hz", 2.5e9, "scenario");
    if (doc.contains("solver"))
        s.config = parse_solver(doc["solver"]);

    const bool has_users = doc.contains("users");
    const bool has_gen = doc.contains("generate");
    if (has_users == has_gen)
        throw ValidationError("scenario: exactly one of 'users' or 'generate' is required");
    try {
        s.box.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    if (has_users) {
        const json& arr = doc["users"];
        if (!arr.is_array())
            throw ValidationError("users: expected an array of [x, y] pairs");
        for (const auto& u : arr) {
            if (!u.is_array() || u.size() != 2 || !u[0].is_number() || !u[1].is_number())
                throw ValidationError("users: each entry must be [x, y]");
            s.users.push_back({u[0].get<double>(), u[1].get<double>()});
        }
    } else {
        const json& g = doc["generate"];
        reject_unknown_keys(g, "generate", {"n", "seed"});
        const auto n = unsigned_integer(g, "n", "generate");
        if (n < 1)
            throw ValidationError("generate.n must be >= 1");
        s.users = generate_users(n, s.box, unsigned_integer(g, "seed", "generate"));
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return s;
}

LoadedScenario load_scenario_file(const fs::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw ValidationError("cannot read scenario file " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    LoadedScenario out;
    out.bytes = ss.str();
    json doc;
    try {
        doc = json::parse(out.bytes);
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    out.scenario = parse_scenario(doc);
    return out;
}

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream hex;
    hex << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i)
        hex << std::setw(2) << static_cast<int>(digest[i]);
    return hex.str();
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json placement_to_json(const Placement& p, const Scenario& s, const AlphaSolution& alpha,
                               const Provenance& prov)
{
    ordered_json doc;
    doc["format"] = "dronecell.placement/1";
    doc["environment"] = environment_key(s.environment);
    doc["gamma_db"] = s.gamma_db;
    doc["fc_hz"] = s.fc_hz;
    doc["alpha_star"] = p.alpha_star;
    doc["max_radius"] = alpha.max_radius;
    doc["x_d"] = p.x_d;
    doc["y_d"] = p.y_d;
    doc["h"] = p.h;
    doc["radius"] = p.radius;
    doc["served_count"] = p.served_count;
    doc["served"] = p.served;
    doc["flags"] = {{"radius_floor_applied", p.radius_floor_applied},
                    {"altitude_clamped", p.altitude_clamped},
                    {"center_projected", p.center_projected}};
    doc["provenance"] = {{"input_sha256", prov.input_sha256}, {"version", prov.version}};
    return doc;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Aerial base station 3-D placement", "dronecell"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::optional<double> epsilon;
    std::optional<int> max_iter;
    auto add_solver_flags = [&](CLI::App* sub) {
        sub->add_option("--epsilon", epsilon, "Bisection tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--max-iter", max_iter, "Bisection iteration cap")->check(CLI::PositiveNumber);
    };

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Place a drone-cell for a scenario file");
    solve_cmd->add_option("--scenario", solve.scenario, "Scenario JSON")->required();
    solve_cmd->add_option("--out", solve.out, "Output file (directory with --env all)");
    solve_cmd->add_option("--env", solve.env, "Override environment (preset name or 'all')");

    std::string env_name;
    double gamma = 100.0;
    double fc = 2.5e9;
    std::string out_path;
    auto* alpha_cmd = app.add_subcommand("alpha-star", "Optimal altitude-to-radius ratio");
    alpha_cmd->add_option("--env", env_name, "Environment preset")->required();
    alpha_cmd->add_option("--gamma", gamma, "Pathloss threshold (dB)")->required();
    alpha_cmd->add_option("--fc", fc, "Carrier frequency (Hz)")->check(CLI::PositiveNumber);
    alpha_cmd->add_option("--out", out_path, "Write JSON here instead of stdout");
    add_solver_flags(alpha_cmd);

    std::string curve_env = "all";
    std::size_t samples = 1001;
    double alpha_max = alpha_upper_bound();
    auto* curve_cmd = app.add_subcommand("gamma-curve", "Sample Gamma(alpha) per environment");
    curve_cmd->add_option("--env", curve_env, "Environment preset or 'all'");
    curve_cmd->add_option("--gamma", gamma, "Pathloss threshold (dB)");
    curve_cmd->add_option("--fc", fc, "Carrier frequency (Hz)")->check(CLI::PositiveNumber);
    curve_cmd->add_option("--samples", samples, "Uniform samples per curve");
    curve_cmd->add_option("--alpha-max", alpha_max, "Upper end of the sampled range");
    curve_cmd->add_option("--out", out_path, "Output directory");
    add_solver_flags(curve_cmd);

    MonteCarloOptions mc;
    auto* mc_cmd = app.add_subcommand("montecarlo", "Monte Carlo served-user statistics");
    mc_cmd->add_option("--scenario", mc.scenario, "Scenario JSON for box/altitude/solver");
    mc_cmd->add_option("--users", mc.users, "Users per run");
    mc_cmd->add_option("--runs", mc.runs, "Runs per cell");
    mc_cmd->add_option("--seed", mc.seed, "Base seed");
    mc_cmd->add_option("--env", mc.envs, "Environments (comma list or 'all')")->delimiter(',');
    mc_cmd->add_option("--gamma", mc.gammas, "Thresholds in dB (comma list)")->delimiter(',');
    mc_cmd->add_option("--fc", mc.fc, "Carrier frequency (Hz)")->check(CLI::PositiveNumber);
    mc_cmd->add_option("--out", mc.out, "Output CSV");
    add_solver_flags(mc_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*solve_cmd)
            return cmd_solve(solve, out);
        if (*alpha_cmd)
            return cmd_alpha_star(env_name, gamma, fc, overlay({}, epsilon, max_iter), out_path,
                                  out);
        if (*curve_cmd)
            return cmd_gamma_curve(curve_env, gamma, fc, samples, alpha_max,
                                   overlay({}, epsilon, max_iter), out_path, out);
        if (*mc_cmd) {
            SolverConfig base;
            if (!mc.scenario.empty())
                base = load_scenario_file(mc.scenario).scenario.config;
            return cmd_montecarlo(mc, overlay(base, epsilon, max_iter), out);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}

}  // namespace dronecell::cli
