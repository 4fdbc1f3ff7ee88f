#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "rho_cli_test";

int run(const std::string& args, std::string* out = nullptr) {
  fs::create_directories(kDir);
  const fs::path o = kDir / "stdout.txt";
  const std::string cmd = std::string(RHO_CLI_PATH) + " " + args + " > " + o.string() + " 2> " +
                          (kDir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(o);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const std::string& name, const std::string& text) {
  fs::create_directories(kDir);
  const fs::path p = kDir / name;
  std::ofstream(p) << text;
  return p.string();
}

const char* kGaussian = R"({"kind": "gaussian", "params": {"mean": 0, "sd": 1}})";

}  // namespace

TEST(Cli, BoundsJson) {
  std::string out;
  ASSERT_EQ(run("bounds --n 300 --cardinality 10 --vc 3", &out), 0);
  const auto j = nlohmann::json::parse(out);
  EXPECT_NEAR(j.at("kappa").get<double>(), 280 * std::sqrt(2.0) + 74, 1e-9);
}

TEST(Cli, FitSelectCsvAndJson) {
  const std::string cfg = config("fit.json", R"({"data": [0.1, -0.3, 0.4, 0.2, -0.1],
      "model": {"type": "gaussian_location", "theta_min": -1, "theta_max": 1, "step": 0.25}})");
  std::string out;
  ASSERT_EQ(run("--config " + cfg + " fit", &out), 0);
  const auto j = nlohmann::json::parse(out);
  EXPECT_TRUE(j.contains("fit"));
  ASSERT_EQ(run("--config " + cfg + " --format csv fit", &out), 0);
  EXPECT_FALSE(out.empty());

  const std::string sel = config("select.json", R"({"data": [0.1, -0.3, 0.4, 0.2, -0.1], "models": [
      {"type": "gaussian_location", "theta_min": -1, "theta_max": 1, "step": 0.25},
      {"type": "gaussian_location", "theta_min": -1, "theta_max": 1, "step": 0.5, "sd": 2}]})");
  ASSERT_EQ(run("--config " + sel + " --psi psi1 select", &out), 0);
  EXPECT_EQ(nlohmann::json::parse(out).at("risk_bounds").size(), 2u);
}

TEST(Cli, AggregateAndRegress) {
  const std::string agg = config("agg.json", std::string(R"({"data": [0.1, 1.2, -0.5], "candidates": [)") +
                                                 kGaussian + R"(, {"kind": "cauchy", "params": {"loc": 1, "scale": 1}}]})");
  std::string out;
  ASSERT_EQ(run("--config " + agg + " aggregate", &out), 0);
  EXPECT_EQ(nlohmann::json::parse(out).at("alpha_star").size(), 2u);
  ASSERT_EQ(run("--config " + agg + " --format csv aggregate", &out), 0);
  EXPECT_EQ(out.substr(0, 16), "candidate,alpha\n");

  const std::string reg = config("reg.json", std::string(R"({"data": {"w": [0, 0.5, 1], "y": [0.1, 0.4, 1.1]},
      "error_models": [)") + kGaussian + R"(], "function_families": [{"basis": ["w"], "grid": [[0, 0.5, 1]]}]})");
  ASSERT_EQ(run("--config " + reg + " regress", &out), 0);
  EXPECT_TRUE(nlohmann::json::parse(out).contains("g"));
}

TEST(Cli, BenchAndDemo) {
  const std::string b = config("bench.json", std::string(R"({"scenario": {"kind": "iid", "center": )") + kGaussian +
                                                 R"(, "n": 20, "replications": 3},
      "estimator": {"type": "gaussian_mle"}})");
  std::string out;
  ASSERT_EQ(run("--config " + b + " --seed 4 bench", &out), 0);
  EXPECT_EQ(nlohmann::json::parse(out).at("per_replicate").size(), 3u);
  const std::string r = config("bench_rho.json", std::string(R"({"scenario": {"kind": "iid", "center": )") +
                                                     kGaussian + R"(, "n": 20, "replications": 2},
      "estimator": {"type": "rho", "model": {"type": "gaussian_location", "theta_min": -1, "theta_max": 1,
                                             "step": 0.5}}})");
  ASSERT_EQ(run("--config " + r + " bench", &out), 0);
  EXPECT_GT(nlohmann::json::parse(out).at("bound_reference").get<double>(), 0.0);
  ASSERT_EQ(run("--format csv demo-mle --n 30 --reps 2", &out), 0);
  EXPECT_EQ(out.substr(0, out.find('\n')), "replicate,event,sample_max,sample_mean,mle,rho_theta");
}

TEST(Cli, OutFile) {
  const fs::path o = kDir / "bounds_out.json";
  fs::remove(o);
  ASSERT_EQ(run("--out " + o.string() + " bounds --n 10 --cardinality 2"), 0);
  EXPECT_TRUE(fs::exists(o));
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("--config /nonexistent.json fit"), 2);
  EXPECT_EQ(run("--format xml bounds"), 2);
  EXPECT_EQ(run("--psi psi3 bounds"), 2);
  EXPECT_EQ(run("nosuchcommand"), 2);
  EXPECT_EQ(run("--config " + config("bad.json", "{\"data\": [1, 2]}") + " fit"), 2);
  EXPECT_EQ(run("--config " + config("badmodel.json",
                                     R"({"data": [1], "model": {"type": "gaussian_location", "theta_min": 1,
                                         "theta_max": 0, "step": 0.1}})") +
                " fit"),
            2);
}

TEST(Cli, NumericalFailureExitsThree) {
  // Two identical candidates make the evaluation matrix singular.
  const std::string agg =
      config("degenerate.json", std::string(R"({"data": [0.1, 1.2, -0.5], "candidates": [)") + kGaussian + ", " +
                                    kGaussian + "]}");
  EXPECT_EQ(run("--config " + agg + " aggregate"), 3);
}
