#include "rwre/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using rwre::cli::ConfigError;

const fs::path kConfigs = RWRE_CONFIGS;

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    Outcome o;
    o.code = rwre::cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const fs::path& p)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("rwre_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write_config(const json& doc, const std::string& name = "config.json")
    {
        const fs::path p = dir_ / name;
        std::ofstream(p) << doc.dump();
        return p;
    }

    fs::path dir_;
};

json minimal()
{
    return {{"schema_version", 1},
            {"presentation", {{"k", 0}, {"r", 3}}},
            {"env", {{"family", "simple_symmetric"}}}};
}

std::string parse_error(const json& doc)
{
    try {
        rwre::cli::parse_config(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

TEST(ParseConfig, Minimal)
{
    const auto cfg = rwre::cli::parse_config(minimal());
    EXPECT_EQ(cfg.presentation().degree(), 3);
    EXPECT_EQ(cfg.env.family_name(), "simple_symmetric");
    EXPECT_EQ(cfg.env_seed, 0u);
    EXPECT_EQ(cfg.walk.steps, 10000u);
}

TEST(ParseConfig, ErrorsNameTheKey)
{
    json doc = minimal();
    doc["walk"] = {{"stepz", 3}};
    EXPECT_NE(parse_error(doc).find("'walk.stepz'"), std::string::npos);

    doc = minimal();
    doc["extra"] = 1;
    EXPECT_NE(parse_error(doc).find("'extra'"), std::string::npos);

    doc = minimal();
    doc["walk"] = {{"steps", "many"}};
    EXPECT_NE(parse_error(doc).find("'walk.steps'"), std::string::npos);

    doc = minimal();
    doc["walk"] = {{"steps", -5}};
    EXPECT_NE(parse_error(doc).find("'walk.steps'"), std::string::npos);

    doc = minimal();
    doc.erase("schema_version");
    EXPECT_NE(parse_error(doc).find("'schema_version'"), std::string::npos);

    doc = minimal();
    doc["schema_version"] = 2;
    EXPECT_NE(parse_error(doc).find("'schema_version'"), std::string::npos);

    doc = minimal();
    doc["presentation"] = {{"k", 1}, {"r", 0}};
    EXPECT_NE(parse_error(doc).find("'presentation'"), std::string::npos);

    doc = minimal();
    doc["env"] = {{"family", "dirichlet"}};
    EXPECT_NE(parse_error(doc).find("'env.alpha'"), std::string::npos);

    doc = minimal();
    doc["env"] = {{"family", "dirichlet"}, {"alpha", {1, 1}}};
    EXPECT_NE(parse_error(doc).find("'env'"), std::string::npos);

    doc = minimal();
    doc["env"] = {{"family", "levy"}};
    EXPECT_NE(parse_error(doc).find("'env.family'"), std::string::npos);

    doc = minimal();
    doc["env"] = {{"family", "finite_points"}, {"points", {{0.5, 0.5}}}, {"weights", {1}}};
    EXPECT_NE(parse_error(doc).find("'env.points[0]'"), std::string::npos);

    doc = minimal();
    doc["env"]["seed"] = 3;
    doc["seeds"] = {{"environment", 4}};
    EXPECT_NE(parse_error(doc).find("'seeds.environment'"), std::string::npos);

    doc = minimal();
    doc["flow"] = {{"levels", json::array()}};
    EXPECT_NE(parse_error(doc).find("'flow.levels'"), std::string::npos);

    doc = minimal();
    doc["network"] = {{"depth", 0}};
    EXPECT_NE(parse_error(doc).find("'network.depth'"), std::string::npos);
}

TEST(ParseConfig, SeedsAndOverrides)
{
    json doc = minimal();
    doc["env"]["seed"] = 5;
    doc["seeds"] = {{"environment", 5}, {"trajectory", 6}};
    auto cfg = rwre::cli::parse_config(doc);
    EXPECT_EQ(cfg.env_seed, 5u);
    EXPECT_EQ(cfg.traj_seed, 6u);

    rwre::cli::Overrides o;
    o.seed_env = 11;
    o.steps = 77;
    o.depth = 4;
    o.delta = 0.7;
    o.samples = 123;
    rwre::cli::apply_overrides(cfg, o);
    EXPECT_EQ(cfg.env_seed, 11u);
    EXPECT_EQ(cfg.traj_seed, 6u);
    EXPECT_EQ(cfg.walk.steps, 77u);
    EXPECT_EQ(cfg.speed.steps, 77u);
    EXPECT_EQ(cfg.network.depth, 4u);
    EXPECT_EQ(*cfg.flow.delta, 0.7);
    EXPECT_EQ(cfg.checks.samples, 123u);
}

TEST(ParseConfig, ShippedConfigsLoad)
{
    for (const auto& entry : fs::directory_iterator(kConfigs)) {
        SCOPED_TRACE(entry.path().string());
        EXPECT_NO_THROW(rwre::cli::load_config(entry.path()));
    }
}

TEST_F(CliTest, CheckAssumptionsSimpleSymmetric)
{
    const auto o = run_cli({"check-assumptions", "--config", (kConfigs / "simple_symmetric_d3.json").string(),
                            "--out", dir_.string()});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_NE(o.out.find("A2 (log-integrability): finite"), std::string::npos);
    EXPECT_NE(o.out.find("eps = 0.33333333333333331"), std::string::npos);
    EXPECT_EQ(first_line(dir_ / "check-assumptions.csv"), "letter,generator,a2_finite,mean_abs_log,stderr,analytic");
    const json summary = json::parse(slurp(dir_ / "check-assumptions.summary.json"));
    EXPECT_TRUE(summary["result"]["a2_holds"].get<bool>());
    EXPECT_NEAR(summary["result"]["a3_epsilon"].get<double>(), 1.0 / 3.0, 1e-15);
}

TEST_F(CliTest, CheckAssumptionsFailureExitsFour)
{
    json doc = minimal();
    doc["env"] = {{"family", "dirichlet"}, {"alpha", {1, 1, 1}}};
    doc["checks"] = {{"samples", 1000}, {"require_a3", true}};
    const auto o = run_cli({"check-assumptions", "--config", write_config(doc).string(), "--out", dir_.string()});
    EXPECT_EQ(o.code, 4);
    EXPECT_NE(o.out.find("no eps certifiable"), std::string::npos);

    doc["env"] = {{"family", "finite_points"}, {"points", {{0.5, 0.5, 0.0}}}, {"weights", {1}}};
    doc["checks"] = {{"samples", 1000}};
    EXPECT_EQ(run_cli({"check-assumptions", "--config", write_config(doc).string(), "--out", dir_.string()}).code, 4);
}

TEST_F(CliTest, FlowRejectsDeltaOutsideInterval)
{
    const auto o = run_cli({"flow", "--config", (kConfigs / "dirichlet_d3.json").string(), "--out",
                            dir_.string(), "--delta", "0.4"});
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("(1/(d-1), 1) = (0.5, 1)"), std::string::npos) << o.err;
    EXPECT_FALSE(fs::exists(dir_ / "flow.csv"));
}

TEST_F(CliTest, FlowSimpleSymmetric)
{
    const auto o = run_cli({"flow", "--config", (kConfigs / "simple_symmetric_d3.json").string(), "--out",
                            dir_.string()});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_NE(o.out.find("certified"), std::string::npos);
    std::istringstream csv(slurp(dir_ / "flow.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "n,samples,mean_log_phi_over_n,stderr,fraction_below,flow_lower_bound");
    std::getline(csv, line);
    EXPECT_EQ(line.substr(0, 6), "4,200,");
    EXPECT_EQ(line.back(), ',');   // no bound when the fraction is 0
}

TEST_F(CliTest, ResistanceSimpleSymmetric)
{
    const auto o = run_cli({"resistance", "--config", (kConfigs / "simple_symmetric_d3.json").string(),
                            "--out", dir_.string()});
    ASSERT_EQ(o.code, 0) << o.err;
    std::istringstream csv(slurp(dir_ / "resistance.csv"));
    std::string line, last;
    std::getline(csv, line);
    EXPECT_EQ(line, "L,effective_conductance,escape_probability,vertices_visited,wall_time_ms");
    int rows = 0;
    while (std::getline(csv, line)) {
        last = line;
        ++rows;
        EXPECT_EQ(line.back(), ',');   // wall time only with --timing
    }
    EXPECT_EQ(rows, 12);
    std::vector<std::string> cells;
    std::istringstream row(last);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    ASSERT_GE(cells.size(), 4u);
    EXPECT_EQ(cells[0], "12");
    EXPECT_NEAR(std::stod(cells[2]), 0.5001, 1e-4);
    EXPECT_EQ(cells[3], "12286");

    const auto timed = run_cli({"resistance", "--config", (kConfigs / "simple_symmetric_d3.json").string(),
                                "--out", dir_.string(), "--depth", "3", "--timing"});
    EXPECT_EQ(timed.code, 0);
    std::istringstream csv2(slurp(dir_ / "resistance.csv"));
    std::getline(csv2, line);
    std::getline(csv2, line);
    EXPECT_NE(line.back(), ',');
}

TEST_F(CliTest, ResistanceBudgetExitsThree)
{
    const auto o = run_cli({"resistance", "--config", (kConfigs / "simple_symmetric_d3.json").string(),
                            "--out", dir_.string(), "--depth", "30"});
    EXPECT_EQ(o.code, 3);
    EXPECT_NE(o.err.find("budget"), std::string::npos);
}

TEST_F(CliTest, SimulateAndSpeedHeaders)
{
    const std::string cfg = (kConfigs / "simple_symmetric_d3.json").string();
    auto o = run_cli({"simulate", "--config", cfg, "--out", dir_.string(), "--steps", "200"});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(first_line(dir_ / "simulate.csv"),
              "env_seed,traj_seed,steps,final_distance,max_distance,returns_to_root,last_return_time");
    EXPECT_NE(o.out.find("transience"), std::string::npos);

    o = run_cli({"speed", "--config", cfg, "--out", dir_.string(), "--steps", "2000"});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(first_line(dir_ / "speed.csv"),
              "env_seed,traj_seed,steps,speed,martingale_over_n,drift_over_n,floor,floor_ok");
    EXPECT_NE(o.out.find("satisfied on every run"), std::string::npos);
    const json summary = json::parse(slurp(dir_ / "speed.summary.json"));
    EXPECT_EQ(summary["result"]["runs"].get<int>(), 20);
    EXPECT_TRUE(summary["result"]["floor_satisfied"].get<bool>());
}

TEST_F(CliTest, UsageErrorsExitTwo)
{
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"simulate"}).code, 2);
    EXPECT_EQ(run_cli({"teleport", "--config", "x.json"}).code, 2);
    EXPECT_EQ(run_cli({"simulate", "--config", (dir_ / "missing.json").string()}).code, 2);
    EXPECT_EQ(run_cli({"simulate", "--config", (kConfigs / "simple_symmetric_d3.json").string(),
                       "--threads", "0"}).code,
              2);
    std::ofstream(dir_ / "broken.json") << "{ not json";
    const auto o = run_cli({"speed", "--config", (dir_ / "broken.json").string()});
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("not valid JSON"), std::string::npos);
}

TEST_F(CliTest, OutputsIndependentOfThreads)
{
    const std::string cfg = (kConfigs / "dirichlet_d3.json").string();
    const std::vector<std::vector<std::string>> commands = {
        {"simulate", "--steps", "500"},
        {"flow", "--samples", "200"},
        {"resistance", "--depth", "6"},
        {"speed", "--steps", "500"},
        {"check-assumptions", "--samples", "500"}};
    for (const auto& extra : commands) {
        std::string csv[2];
        for (int t = 0; t < 2; ++t) {
            const fs::path out = dir_ / (extra[0] + std::to_string(t));
            std::vector<std::string> args{extra[0], "--config", cfg, "--out", out.string(), "--threads",
                                          t == 0 ? "1" : "8"};
            args.insert(args.end(), extra.begin() + 1, extra.end());
            ASSERT_EQ(run_cli(args).code, 0);
            csv[t] = slurp(out / (extra[0] + ".csv"));
        }
        EXPECT_FALSE(csv[0].empty());
        EXPECT_EQ(csv[0], csv[1]) << extra[0];
    }
}

} // namespace
