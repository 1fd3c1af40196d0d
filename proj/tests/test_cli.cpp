#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

#ifndef OBSPLAN_CLI
#error "OBSPLAN_CLI must name the command-line binary"
#endif

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("obsplan_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(OBSPLAN_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen, plan, brute and bound end to end") {
  TempDir dir;
  REQUIRE(run("gen --n 5 --map 200 --seed 7 --out " + (dir / "inst.json")) == 0);
  const auto inst = nlohmann::json::parse(slurp(dir / "inst.json"));
  CHECK(inst["objects"].size() == 5);
  CHECK(inst["sensing"]["theta_deg"].get<double>() == doctest::Approx(30.0));

  REQUIRE(run("plan --in " + (dir / "inst.json") + " --method gtsp --qstar 0.7 --out " + (dir / "plan.json")) == 0);
  const auto plan = nlohmann::json::parse(slurp(dir / "plan.json"));
  CHECK(plan.contains("feasible"));
  CHECK(plan["method"] == "GTSP");
  if (plan["feasible"].get<bool>()) CHECK(plan["order"].size() == 5);

  // Same input, same bytes.
  REQUIRE(run("plan --in " + (dir / "inst.json") + " --method gtsp --qstar 0.7 --out " + (dir / "plan2.json")) == 0);
  CHECK(slurp(dir / "plan.json") == slurp(dir / "plan2.json"));

  CHECK(run("plan --in " + (dir / "inst.json") + " --method npf --rounded --out " + (dir / "r.json")) == 0);
  REQUIRE(run("brute --in " + (dir / "inst.json") + " --qstar 0.7 --out " + (dir / "brute.json")) == 0);
  const auto br = nlohmann::json::parse(slurp(dir / "brute.json"));
  if (plan["feasible"].get<bool>()) {
    CHECK(br["total_length_m"].get<double>() <= plan["total_length_m"].get<double>() + 1e-9);
  }
  REQUIRE(run("bound --in " + (dir / "inst.json") + " --out " + (dir / "lb.json")) == 0);
  const double lb = nlohmann::json::parse(slurp(dir / "lb.json"))["lower_bound_m"];
  CHECK(lb <= br["total_length_m"].get<double>() + 1e-9);
  CHECK(run("points --in " + (dir / "inst.json") + " --out " + (dir / "pts.csv")) == 0);
  CHECK(slurp(dir / "pts.csv").rfind("object,ring,angle,x,y,own_quality\n", 0) == 0);
}

TEST_CASE("bench writes the results schema") {
  TempDir dir;
  REQUIRE(run("bench --n 3 --cases 2 --dmax 10 --qstar 0.3,0.5 --out " + (dir / "r.csv") + " --summary " +
              (dir / "s.csv")) == 0);
  const std::string csv = slurp(dir / "r.csv");
  CHECK(csv.rfind("seed,n,d_max,epsilon,method,q_star_frac,length_m,quality,lb_m,ratio_lb,ratio_brute,feasible,dp_ms\n", 0) == 0);
  // 2 cases x 10 record kinds x 2 thresholds.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 40);
  CHECK(fs::exists(dir / "s.csv"));

  // Worker count does not change the output.
  REQUIRE(std::system(("OBSPLAN_WORKERS=3 " + std::string(OBSPLAN_CLI) + " bench --n 3 --cases 2 --qstar 0.3,0.5 --out " +
                       (dir / "r3.csv") + " >/dev/null").c_str()) == 0);
  auto strip_time = [](const std::string& text) {
    std::string out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
  };
  CHECK(strip_time(slurp(dir / "r3.csv")) == strip_time(csv));
}

TEST_CASE("lp-export and validate") {
  TempDir dir;
  REQUIRE(run("gen --n 2 --map 100 --seed 3 --epsilon 1 --dmax 5 --theta 10 --out " + (dir / "inst.json")) == 0);
  REQUIRE(run("lp-export --in " + (dir / "inst.json") + " --qstar 0.5 --out " + (dir / "m.lp")) == 0);
  const std::string lp = slurp(dir / "m.lp");
  CHECK(lp.find("Subject To") != std::string::npos);
  REQUIRE(run("lp-export --in " + (dir / "inst.json") + " --qstar 0.5 --out " + (dir / "m2.lp")) == 0);
  CHECK(lp == slurp(dir / "m2.lp"));

  std::ofstream(dir / "zeros.txt") << "X_0_1_0_0 0\n";
  CHECK(run("validate --in " + (dir / "inst.json") + " --solution " + (dir / "zeros.txt")) == 1);
  std::ofstream(dir / "tour.txt") << "X_0_1_0_0 1\nX_1_2_0_0 1\nX_2_0_0_0 1\n";
  CHECK(run("validate --in " + (dir / "inst.json") + " --qstar 0.1 --solution " + (dir / "tour.txt") + " --out " +
            (dir / "rep.json")) == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "rep.json"))["valid"] == true);
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run("plan --in " + (dir / "missing.json")) == 2);
  std::ofstream(dir / "bad.json") << "{\"map_size\": 200}";
  CHECK(run("plan --in " + (dir / "bad.json")) == 1);
  REQUIRE(run("gen --n 3 --seed 1 --out " + (dir / "inst.json")) == 0);
  CHECK(run("plan --in " + (dir / "inst.json") + " --qstar 1.5") == 1);
  CHECK(run("plan --in " + (dir / "inst.json") + " --method nope") == 1);
  CHECK(run("plan --in " + (dir / "inst.json") + " --exact --rounded") == 1);
  CHECK(run("gen --n 3 --out " + (dir / "no_such_dir/inst.json")) == 2);
  CHECK(run("frobnicate") == 1);
}
