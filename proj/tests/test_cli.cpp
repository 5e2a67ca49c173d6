#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("minimax_boundary_cli_" + std::to_string(::getpid()));
  ScratchDir() {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ignored;
    fs::remove_all(path, ignored);
  }
};

fs::path scratch_dir() {
  static const ScratchDir dir;
  return dir.path;
}

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string out_flag(const std::string& name) { return "--out \"" + (scratch_dir() / name).string() + "\""; }

}  // namespace

TEST_CASE("constants command") {
  REQUIRE(run("constants " + out_flag("c1")) == 0);
  const auto j = nlohmann::json::parse(slurp(scratch_dir() / "c1" / "constants.json"));
  CHECK(std::abs(j["y_star"].get<double>() - (-0.12455)) < 1e-4);
  CHECK(j.contains("t_bar_display"));
  CHECK(j.contains("t_bar_recursion"));
  CHECK(j["sources"]["t_bar_display"] == "paper_display");

  REQUIRE(run("constants " + out_flag("c2")) == 0);
  CHECK(slurp(scratch_dir() / "c1" / "constants.json") == slurp(scratch_dir() / "c2" / "constants.json"));

  REQUIRE(run("constants --format csv " + out_flag("c3")) == 0);
  CHECK(slurp(scratch_dir() / "c3" / "constants.csv").rfind("name,value,source\nk0,", 0) == 0);
}

TEST_CASE("kernel command") {
  REQUIRE(run("kernel --sigma 1 --c 1 " + out_flag("k")) == 0);
  std::ifstream csv(scratch_dir() / "k" / "kernel.csv");
  std::string header, first;
  std::getline(csv, header);
  std::getline(csv, first);
  CHECK(header == "t,psi");
  CHECK(first.rfind("0,", 0) == 0);
  CHECK(std::abs(std::stod(first.substr(2)) - 1.7451509858523378) < 1e-10);
  const auto risk = nlohmann::json::parse(slurp(scratch_dir() / "k" / "risk.json"));
  CHECK(std::abs(risk["risk"].get<double>() - 1.7451509858523378) < 1e-10);
  CHECK(std::abs(risk["paper_constant_without_fifth"].get<double>() - 5.0 * 1.7451509858523378) < 1e-9);
  CHECK(slurp(scratch_dir() / "k" / "kernel.csv").find('\r') == std::string::npos);

  REQUIRE(run("rd-kernel --format json " + out_flag("rd")) == 0);
  const auto rd = nlohmann::json::parse(slurp(scratch_dir() / "rd" / "rd_kernel.json"));
  CHECK(rd["side"] == "rd_antisymmetric");
  CHECK(std::abs(rd["amplitude"].get<double>() - 2.0046520666700344) < 1e-10);
  CHECK(fs::exists(scratch_dir() / "rd" / "rd_risk.json"));
}

TEST_CASE("quick oracle battery passes") {
  REQUIRE(run("oracle --grid-n 500 --horizon 4 --tolerance-profile quick " + out_flag("o")) == 0);
  const auto j = nlohmann::json::parse(slurp(scratch_dir() / "o" / "oracle.json"));
  CHECK(j["passed"] == true);
  CHECK(j["failed"].empty());
  CHECK(j["checks"].size() >= 10);
  CHECK(j["support"].contains("t_bar_display"));
}

TEST_CASE("simulate command is reproducible across thread counts") {
  REQUIRE(run("simulate --replications 400 --seed 5 " + out_flag("s1")) == 0);
  REQUIRE(::setenv("MINIMAX_BOUNDARY_THREADS", "4", 1) == 0);
  REQUIRE(run("simulate --replications 400 --seed 5 " + out_flag("s2")) == 0);
  ::unsetenv("MINIMAX_BOUNDARY_THREADS");
  CHECK(slurp(scratch_dir() / "s1" / "simulation.json") == slurp(scratch_dir() / "s2" / "simulation.json"));
  const auto j = nlohmann::json::parse(slurp(scratch_dir() / "s1" / "simulation.json"));
  CHECK(j["replications"] == 400);
  CHECK(j["seed"] == 5);
  CHECK(j["sources"]["empirical_mse"] == "monte_carlo");
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run("") == 2);
  CHECK(run("nonsense") == 2);
  CHECK(run("kernel --sigma -1") == 2);
  CHECK(run("kernel --format xml") == 2);
  CHECK(run("simulate --replications 10") == 2);
  CHECK(run("oracle --grid-n 100 " + out_flag("bad")) == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("failed verification exits with status 1") {
  // eight cells per kernel support leave a Riemann-sum bias far outside the Monte Carlo noise
  CHECK(run("simulate --grid-n 8 --replications 4000 " + out_flag("coarse")) == 1);
  const auto j = nlohmann::json::parse(slurp(scratch_dir() / "coarse" / "simulation.json"));
  CHECK(j["within_3_stderr"] == false);
}
