#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "common.hpp"
#include "sbp/cli.hpp"

using namespace sbp;
using sbp::cli::Command;

namespace {

std::optional<cli::RunConfig> parse(std::vector<std::string> args) {
  args.insert(args.begin(), "sbp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream help;
  return cli::parse_config(static_cast<int>(argv.size()), argv.data(), help);
}

int run(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "sbp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return code;
}

std::string write_config(const std::string& dir, const std::string& text) {
  const std::string path = dir + "/config.json";
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

}  // namespace

TEST(Config, MinimalFileGetsDefaults) {
  const std::string dir = test::scratch_dir("cfg_min");
  const auto cfg = parse({"--config", write_config(dir, R"({"command": "solve"})")});
  ASSERT_TRUE(cfg);
  EXPECT_EQ(*cfg->command, Command::solve);
  EXPECT_EQ(cfg->grid_n(), 512u);
  EXPECT_EQ(cfg->grid_r_max(), 40.0);
  EXPECT_EQ(cfg->model, (ModelParams{1.0, 1.0, 5.0}));
  EXPECT_EQ(cfg->solver.tol_residual, 1e-6);
  EXPECT_NO_THROW(cli::validate(*cfg));
}

TEST(Config, FlagsOverrideFile) {
  const std::string dir = test::scratch_dir("cfg_override");
  const auto cfg = parse({"--config", write_config(dir, R"({"command": "solve", "model": {"a": 0.5, "p": 4.5}})"),
                          "--a", "0.25"});
  ASSERT_TRUE(cfg);
  EXPECT_EQ(cfg->model.a, 0.25);
  EXPECT_EQ(cfg->model.p, 4.5);
}

TEST(Config, OracleCheckHasItsOwnGridDefaults) {
  const auto cfg = parse({"oracle_check"});
  ASSERT_TRUE(cfg);
  EXPECT_EQ(cfg->grid_n(), 256u);
  EXPECT_EQ(cfg->grid_r_max(), 8.0);
  EXPECT_EQ(parse({"oracle_check", "--n", "300"})->grid_n(), 300u);
}

TEST(Config, NamedFieldErrors) {
  const std::string dir = test::scratch_dir("cfg_err");
  try {
    parse({"--config", write_config(dir, R"({"command": "solve", "model": {"pp": 5}})")});
    FAIL();
  } catch (const cli::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("model.pp"), std::string::npos);
  }
  try {
    parse({"--config", write_config(dir, R"({"command": "solve", "grid": {"n": "many"}})")});
    FAIL();
  } catch (const cli::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("grid.n"), std::string::npos);
  }
  try {
    cli::validate(*parse({"--config", write_config(dir, R"({"model": {"p": 5}})")}));
    FAIL();
  } catch (const cli::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("command"), std::string::npos);
  }
  EXPECT_THROW(parse({"bogus"}), cli::ConfigError);
  EXPECT_THROW(parse({"solve", "--spacing", "log"}), ParameterError);
}

TEST(Config, RefusesNonexistenceRangeForSolve) {
  const auto cfg = parse({"solve", "--p", "7"});
  try {
    cli::validate(*cfg);
    FAIL();
  } catch (const ParameterError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("(4,6)"), std::string::npos);
    EXPECT_NE(msg.find("p >= 6"), std::string::npos);
  }
  std::string out;
  EXPECT_EQ(run({"solve", "--p", "7", "--out-dir", test::scratch_dir("p7")}, &out), cli::exit_config);
  EXPECT_NE(out.find("\"exit\":2"), std::string::npos);
  EXPECT_NO_THROW(cli::validate(*parse({"nonexist_scan", "--p", "7"})));
}

TEST(Cli, SolveWritesArtifactsAndIsIdempotent) {
  const std::string dir = test::scratch_dir("cli_solve");
  std::string out;
  ASSERT_EQ(run({"solve", "--out-dir", dir}, &out), cli::exit_pass);
  for (const char* f : {"report.json", "u.csv", "phi.csv", "audit.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir + "/" + f)) << f;
  }
  const auto summary = nlohmann::json::parse(out);
  EXPECT_EQ(summary.at("command"), "solve");
  EXPECT_TRUE(summary.at("pass").get<bool>());
  const std::string first = slurp(dir + "/report.json");
  ASSERT_EQ(run({"solve", "--out-dir", dir}), cli::exit_pass);
  EXPECT_EQ(first, slurp(dir + "/report.json"));

  // the saved profile reads back exactly and audits clean
  const RadialField u = io::read_field_csv(dir + "/u.csv");
  EXPECT_EQ(u.values()[100], test::reference_solution().u[100]);
  const std::string adir = test::scratch_dir("cli_audit");
  EXPECT_EQ(run({"audit", "--input-profile", dir + "/u.csv", "--out-dir", adir}), cli::exit_pass);
  EXPECT_TRUE(nlohmann::json::parse(slurp(adir + "/audit.json")).at("pass").get<bool>());
}

TEST(Cli, FailedSolveExitsNonzeroWithRefusedAudit) {
  const std::string dir = test::scratch_dir("cli_fail");
  EXPECT_EQ(run({"solve", "--max-iters", "1", "--polish-iters", "0", "--out-dir", dir}), cli::exit_fail);
  const auto audit = nlohmann::json::parse(slurp(dir + "/audit.json"));
  EXPECT_FALSE(audit.at("pass").get<bool>());
  EXPECT_TRUE(audit.contains("refused"));
}

TEST(Cli, ScanExitCodeFollowsViolations) {
  const std::string dir = test::scratch_dir("cli_scan");
  EXPECT_EQ(run({"nonexist_scan", "--p", "6", "--n-samples", "20", "--out-dir", dir}), cli::exit_pass);
  const auto scan = nlohmann::json::parse(slurp(dir + "/scan.json"));
  EXPECT_EQ(scan.at("violations").get<int>(), 0);
  EXPECT_EQ(scan.at("samples").size(), 20u);
}

TEST(Cli, FiberAndOracle) {
  const std::string dir = test::scratch_dir("cli_fiber");
  EXPECT_EQ(run({"fiber", "--out-dir", dir}), cli::exit_pass);
  EXPECT_TRUE(nlohmann::json::parse(slurp(dir + "/fiber.json")).at("maximality").at("root_is_max").get<bool>());
  EXPECT_EQ(run({"oracle_check", "--out-dir", dir}), cli::exit_pass);
  EXPECT_EQ(run({"oracle_check", "--a", "0", "--out-dir", dir}), cli::exit_config);
}

TEST(Cli, HelpExitsCleanly) {
  std::string out;
  EXPECT_EQ(run({"--help"}, &out), cli::exit_pass);
  EXPECT_NE(out.find("--tol-residual"), std::string::npos);
}
