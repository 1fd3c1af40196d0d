#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "obsplan/harness.hpp"
#include "test_helpers.hpp"

using namespace obsplan;
using namespace obsplan::testing;

namespace {

const ExperimentRecord* find(const std::vector<ExperimentRecord>& rs, std::string_view method, double frac) {
  for (const auto& r : rs)
    if (r.method == method && r.q_star_frac == frac) return &r;
  return nullptr;
}

ExperimentRecord rec(std::string method, double length, bool feasible = true, double ratio_brute = NAN) {
  ExperimentRecord r;
  r.seed = 1;
  r.n = 3;
  r.d_max = 10;
  r.method = std::move(method);
  r.q_star_frac = 0.3;
  r.length = length;
  r.feasible = feasible;
  r.ratio_brute = ratio_brute;
  r.ratio_lb = NAN;
  return r;
}

}  // namespace

TEST_CASE("gen_instance") {
  const Instance a = gen_instance(30, 200.0, paper_sensing(), 0.5, 99);
  const Instance b = gen_instance(30, 200.0, paper_sensing(), 0.5, 99);
  REQUIRE(a.size() == 30);
  CHECK(a.start == Point2(0, 0));
  CHECK(a.seed == 99);
  for (int i = 0; i < 30; ++i) {
    CHECK(a.objects[i].position == b.objects[i].position);
    CHECK(a.objects[i].facing == b.objects[i].facing);
    CHECK(a.objects[i].position.minCoeff() >= 0.0);
    CHECK(a.objects[i].position.maxCoeff() <= 200.0);
  }
  CHECK(gen_instance(30, 200.0, paper_sensing(), 0.5, 100).objects[0].position != a.objects[0].position);
  CHECK(gen_instance(3, 200.0, paper_sensing(), 0.5, 1, Point2(5, 6)).start == Point2(5, 6));
  CHECK_THROWS_AS(gen_instance(1, 200.0, paper_sensing(), 0.5, 1), DomainError);

  std::set<int> quadrants;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& o : gen_instance(5, 200.0, paper_sensing(), 0.5, seed).objects) {
      const Vec2<double> f = o.facing_vector();
      quadrants.insert((f.x() >= 0 ? 0 : 1) + (f.y() >= 0 ? 0 : 2));
    }
  }
  CHECK(quadrants.size() == 4);
  CHECK(case_seed(1, 3, 0) != case_seed(1, 4, 0));
}

TEST_CASE("run_case invariants") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Instance inst = gen_instance(3 + seed % 2, 200.0, paper_sensing(), 0.5, seed);
    const Scenario sc(inst);
    CaseConfig cfg;
    const auto recs = run_case(inst, cfg);
    // 6 DP methods + 3 initial paths + MaxQ, 7 thresholds each.
    CHECK(recs.size() == 10 * 7);
    for (double f : cfg.q_star_fractions) {
      const auto* brute = find(recs, "BRUTE", f);
      REQUIRE(brute);
      for (const auto& r : recs) {
        if (r.q_star_frac != f) continue;
        CHECK(r.lb >= 0.0);
        CHECK(r.dp_ms >= 0.0);
        if (!r.feasible) continue;
        CHECK(r.quality >= sc.q_star(f) - 1e-9);
        CHECK(r.length >= r.lb - 1e-9);
        if (r.lb > 0.0) CHECK(r.ratio_lb >= 1.0 - 1e-9);
        if (brute->feasible) {
          CHECK(brute->length <= r.length + 1e-9);
          CHECK(r.ratio_brute >= 1.0 - 1e-9);
        }
      }
      if (brute->feasible) CHECK(brute->ratio_brute == 1.0);
    }
    double best_sum = 0.0;
    for (int i = 0; i < sc.object_count(); ++i) {
      double best = 0.0;
      for (const auto& p : sc.points_of(i)) best = std::max(best, p.own_quality);
      best_sum += best;
    }
    CHECK(find(recs, "MaxQ", 0.3)->quality == doctest::Approx(best_sum));

    // Bit-for-bit reproducible apart from timings.
    const auto again = run_case(inst, cfg);
    REQUIRE(again.size() == recs.size());
    for (std::size_t k = 0; k < recs.size(); ++k) {
      CHECK(again[k].method == recs[k].method);
      CHECK(again[k].feasible == recs[k].feasible);
      if (recs[k].feasible) CHECK(again[k].length == recs[k].length);
    }
  }
}

TEST_CASE("summarize") {
  SUBCASE("single record") {
    const auto rows = summarize({rec("GTSP", 120.0, true, 1.2)});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mean_ratio_brute == doctest::Approx(1.2));
    CHECK(rows[0].median_ratio_brute == doctest::Approx(1.2));
    CHECK(rows[0].satisfaction_pct == 100.0);
  }
  SUBCASE("brute against itself") {
    const auto rows = summarize({rec("BRUTE", 100.0, true, 1.0)});
    CHECK(rows[0].mean_ratio_brute == 1.0);
  }
  SUBCASE("reduction of a seed path") {
    const auto rows = summarize({rec("RS-init", 100.0), rec("RS", 85.0)});
    REQUIRE(rows.size() == 2);
    const auto& init = rows[0].method == "RS-init" ? rows[0] : rows[1];
    CHECK(init.mean_reduction_pct == doctest::Approx(15.0));
  }
  SUBCASE("satisfaction and missing brute data") {
    const auto rows = summarize({rec("NPF", 100.0), rec("NPF", 0.0, false)});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].count == 2);
    CHECK(rows[0].satisfaction_pct == 50.0);
    CHECK(std::isnan(rows[0].mean_ratio_brute));
    CHECK(rows[0].mean_length == 100.0);
  }
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0}) == 2.5);
  CHECK(std::isnan(median({})));
}

TEST_CASE("instance JSON round trip and errors") {
  const Instance inst = gen_instance(4, 200.0, paper_sensing(8.0), 0.5, 5);
  const Instance back = instance_from_json(instance_to_json(inst));
  CHECK(back.map_size == inst.map_size);
  CHECK(back.sensing.d_max == inst.sensing.d_max);
  CHECK(back.sensing.theta == doctest::Approx(inst.sensing.theta));
  CHECK(back.seed == 5);
  for (int i = 0; i < 4; ++i) {
    CHECK(back.objects[i].position == inst.objects[i].position);
    CHECK(back.objects[i].facing == doctest::Approx(inst.objects[i].facing));
  }
  CHECK(instance_to_json(inst)["sensing"]["theta_deg"].get<double>() == doctest::Approx(30.0));

  auto j = instance_to_json(inst);
  j.erase("objects");
  CHECK_THROWS_AS(instance_from_json(j), DomainError);
  j = instance_to_json(inst);
  j["objects"][0]["x"] = 500.0;
  CHECK_THROWS_AS(instance_from_json(j), DomainError);

  const auto dir = std::filesystem::temp_directory_path() / "obsplan_harness_test";
  std::filesystem::create_directories(dir);
  save_json(instance_to_json(inst), dir / "inst.json");
  CHECK(load_instance(dir / "inst.json").objects.size() == 4);
  CHECK_THROWS_AS(load_instance(dir / "missing.json"), IoError);
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(load_instance(dir / "bad.json"), DomainError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CSV and plan JSON") {
  std::ostringstream os;
  write_records_csv(os, {rec("GTSP", 120.0, true, 1.2)});
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  std::getline(is, line);
  CHECK(header == "seed,n,d_max,epsilon,method,q_star_frac,length_m,quality,lb_m,ratio_lb,ratio_brute,feasible,dp_ms");
  CHECK(std::count(line.begin(), line.end(), ',') == 12);
  CHECK(line.find(",GTSP,") != std::string::npos);

  const auto none = plan_to_json("GTSP", std::nullopt, 1.5);
  CHECK(none["feasible"] == false);
  CHECK(none["stops"].empty());
  PlanResult p;
  p.total_length = 12;
  p.total_quality = 2;
  p.stops = {Stop{Point2(1, 2), {0, 1}}};
  p.order_used = {0, 1};
  const auto some = plan_to_json("BRUTE", p, 1.5);
  CHECK(some["feasible"] == true);
  CHECK(some["stops"][0]["observes"].size() == 2);
  CHECK(some["total_length_m"] == 12.0);
}
