#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dronecell/cli.hpp"

using namespace dronecell;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class TempDir {
public:
    TempDir()
    {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("dronecell_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

const fs::path kScenarios{DRONECELL_SCENARIO_DIR};

std::vector<std::vector<std::string>> read_csv(const fs::path& p)
{
    std::vector<std::vector<std::string>> rows;
    std::ifstream f(p);
    std::string line;
    while (std::getline(f, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(CliAlphaStar, MatchesLibrary)
{
    const auto r = run_cli({"alpha-star", "--env", "suburban", "--gamma", "100", "--fc", "2.5e9"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    const auto env = environment_by_name("suburban");
    const auto lib = find_alpha_star(env, LinkBudget(env, 100.0, 2.5e9));
    EXPECT_EQ(doc["alpha_star"].get<double>(), lib.alpha_star);
    EXPECT_EQ(doc["gamma_at_star"].get<double>(), lib.gamma_at_star);
    EXPECT_EQ(doc["max_radius"].get<double>(), lib.max_radius);
    EXPECT_EQ(doc["iterations"].get<int>(), lib.iterations);
}

TEST(CliAlphaStar, UnknownEnvironmentIsUsageError)
{
    EXPECT_EQ(run_cli({"alpha-star", "--env", "rural", "--gamma", "100"}).code, cli::kValidation);
    EXPECT_EQ(run_cli({"alpha-star", "--gamma", "100"}).code, cli::kValidation);
    EXPECT_EQ(run_cli({"no-such-command"}).code, cli::kValidation);
    EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
}

TEST(CliAlphaStar, ThresholdOnlyScalesTheRadius)
{
    const auto a = nlohmann::json::parse(
        run_cli({"alpha-star", "--env", "urban", "--gamma", "90"}).out);
    const auto b = nlohmann::json::parse(
        run_cli({"alpha-star", "--env", "urban", "--gamma", "125"}).out);
    EXPECT_EQ(a["alpha_star"], b["alpha_star"]);
    EXPECT_NEAR(b["max_radius"].get<double>() / a["max_radius"].get<double>(),
                std::pow(10.0, 35.0 / 20.0), 1e-9);
}

TEST(CliGammaCurve, OneFilePerEnvironmentPeakedAtFlaggedRow)
{
    TempDir dir;
    const auto r = run_cli({"gamma-curve", "--env", "all", "--samples", "400", "--alpha-max", "8",
                            "--out", dir.path().string()});
    ASSERT_EQ(r.code, 0) << r.err;
    int files = 0;
    for (const auto& entry : fs::directory_iterator(dir.path())) {
        ++files;
        const auto rows = read_csv(entry.path());
        ASSERT_EQ(rows[0], (std::vector<std::string>{"alpha", "gamma_m2", "peak"}));
        std::size_t peak = 0;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i][2] == "1")
                peak = i;
        ASSERT_GT(peak, 0u) << entry.path();
        // High-rise Urban has a shallow secondary peak near alpha = 0.117.
        const bool unimodal = entry.path().filename() != "gamma_curve_highrise-urban.csv";
        const double top = std::stod(rows[peak][1]);
        for (std::size_t i = 2; i < rows.size(); ++i) {
            const double prev = std::stod(rows[i - 1][1]), cur = std::stod(rows[i][1]);
            EXPECT_LE(cur, top);
            if (i <= peak && unimodal)
                EXPECT_GE(cur, prev) << entry.path();
            else if (i > peak)
                EXPECT_LE(cur, prev) << entry.path();
        }
    }
    EXPECT_EQ(files, 4);
}

TEST(CliGammaCurve, TwoSamples)
{
    TempDir dir;
    ASSERT_EQ(run_cli({"gamma-curve", "--env", "urban", "--samples", "2", "--out",
                       dir.path().string()})
                  .code,
              0);
    const auto rows = read_csv(dir.path() / "gamma_curve_urban.csv");
    EXPECT_EQ(rows.size(), 3u);
    EXPECT_EQ(run_cli({"gamma-curve", "--samples", "1", "--out", dir.path().string()}).code,
              cli::kValidation);
}

TEST(CliSolve, FourEnvironmentsSuburbanLargest)
{
    TempDir dir;
    const auto r = run_cli({"solve", "--scenario", (kScenarios / "fig3_25_users.json").string(),
                            "--env", "all", "--out", dir.path().string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::map<std::string, double> radius;
    for (const auto& key : {"suburban", "urban", "dense-urban", "highrise-urban"}) {
        const auto doc = nlohmann::json::parse(slurp(dir.path() / ("placement_" + std::string(key) + ".json")));
        radius[key] = doc["radius"].get<double>();
        EXPECT_EQ(doc["served_count"].get<std::size_t>(), doc["served"].size());
        EXPECT_EQ(doc["provenance"]["input_sha256"].get<std::string>().size(), 64u);
    }
    EXPECT_GT(radius["suburban"], radius["urban"]);
    EXPECT_GT(radius["suburban"], radius["dense-urban"]);
    EXPECT_GT(radius["suburban"], radius["highrise-urban"]);
}

TEST(CliSolve, ByteIdenticalReruns)
{
    TempDir dir;
    const auto scenario = (kScenarios / "explicit_users.json").string();
    ASSERT_EQ(run_cli({"solve", "--scenario", scenario, "--out", (dir.path() / "a.json").string()}).code, 0);
    ASSERT_EQ(run_cli({"solve", "--scenario", scenario, "--out", (dir.path() / "b.json").string()}).code, 0);
    EXPECT_EQ(slurp(dir.path() / "a.json"), slurp(dir.path() / "b.json"));
    const auto doc = nlohmann::json::parse(slurp(dir.path() / "a.json"));
    EXPECT_EQ(doc["environment"], "custom-urban");
    EXPECT_GE(doc["h"].get<double>(), 50.0);
}

TEST(CliSolve, MalformedScenarioWritesNothing)
{
    TempDir dir;
    const auto bad = dir.path() / "bad.json";
    const auto out = dir.path() / "out.json";
    for (const std::string text :
         {"{not json", R"({"environment": "urban", "gamma_db": 100})",
          R"({"users": [[0,0]], "environment": "urban", "gamma_db": 100, "colour": 1})",
          R"({"users": [[0,0,1]], "environment": "urban", "gamma_db": 100})",
          R"({"users": [[0,0]], "environment": "mars", "gamma_db": 100})",
          R"({"users": [[0,0]], "environment": "urban", "gamma_db": "high"})",
          R"({"users": [[0,0]], "environment": "urban", "gamma_db": 100, "box": {"x_l": 5, "x_u": 1, "y_l": 0, "y_u": 1}})"}) {
        std::ofstream(bad) << text;
        const auto r = run_cli({"solve", "--scenario", bad.string(), "--out", out.string()});
        EXPECT_EQ(r.code, cli::kValidation) << text;
        EXPECT_FALSE(fs::exists(out)) << text;
    }
    EXPECT_EQ(run_cli({"solve", "--scenario", (dir.path() / "missing.json").string()}).code,
              cli::kValidation);
}

TEST(CliSolve, InfeasibleAltitudeExitCode)
{
    TempDir dir;
    const auto f = dir.path() / "inf.json";
    std::ofstream(f) << R"({"users": [[0,0],[5,5]], "environment": "highrise-urban",
                           "gamma_db": 90, "altitude": {"h_l": 5000}})";
    const auto r = run_cli({"solve", "--scenario", f.string(), "--out", (dir.path() / "o.json").string()});
    EXPECT_EQ(r.code, cli::kInfeasible);
    EXPECT_NE(r.err.find("h_l"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir.path() / "o.json"));
}

TEST(CliSolve, DefaultOutputDirectoryFromEnvironment)
{
    TempDir dir;
    ::setenv("DRONECELL_OUT_DIR", dir.path().c_str(), 1);
    const auto r = run_cli({"solve", "--scenario", (kScenarios / "fig3_25_users.json").string()});
    ::unsetenv("DRONECELL_OUT_DIR");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir.path() / "placement_suburban.json"));
}

TEST(CliMonteCarlo, GridDeterministicAndMonotoneInThreshold)
{
    TempDir dir;
    const auto a = dir.path() / "a.csv", b = dir.path() / "b.csv";
    const std::vector<std::string> base{"montecarlo", "--users", "40", "--runs", "10", "--seed", "3"};
    auto with_out = [&](const fs::path& p) {
        auto v = base;
        v.push_back("--out");
        v.push_back(p.string());
        return v;
    };
    ASSERT_EQ(run_cli(with_out(a)).code, 0);
    ASSERT_EQ(run_cli(with_out(b)).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));

    const auto rows = read_csv(a);
    ASSERT_EQ(rows.size(), 13u);
    std::map<std::pair<std::string, std::string>, double> mean;
    for (std::size_t i = 1; i < rows.size(); ++i)
        mean[{rows[i][0], rows[i][1]}] = std::stod(rows[i][6]);
    for (const auto& env : {"suburban", "urban", "dense-urban", "highrise-urban"}) {
        const double m90 = mean[{env, "90"}], m100 = mean[{env, "100"}], m125 = mean[{env, "125"}];
        EXPECT_GE(m125, m100);
        EXPECT_GE(m100, m90);
    }
}

TEST(CliMonteCarlo, SubsetsAndValidation)
{
    TempDir dir;
    const auto out = dir.path() / "mc.csv";
    ASSERT_EQ(run_cli({"montecarlo", "--env", "urban,suburban", "--gamma", "100", "--runs", "3",
                       "--out", out.string()})
                  .code,
              0);
    EXPECT_EQ(read_csv(out).size(), 3u);
    EXPECT_EQ(run_cli({"montecarlo", "--env", "moon", "--out", out.string()}).code,
              cli::kValidation);
    EXPECT_EQ(run_cli({"montecarlo", "--runs", "0", "--out", out.string()}).code,
              cli::kValidation);
}

TEST(CliExecutable, RunsAsSeparateProcess)
{
    TempDir dir;
    const auto out = dir.path() / "p.json";
    const std::string cmd = std::string(DRONECELL_EXE) + " solve --scenario " +
                            (kScenarios / "explicit_users.json").string() + " --out " +
                            out.string() + " > /dev/null";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_TRUE(fs::exists(out));
    const std::string bad = std::string(DRONECELL_EXE) + " alpha-star --env nowhere --gamma 1 2> /dev/null";
    const int status = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(status), cli::kValidation);
}
