#include <cmath>
#include <numbers>

#include "doctest.h"
#include "obsplan/lower_bound.hpp"
#include "obsplan/orders.hpp"
#include "test_helpers.hpp"

using namespace obsplan;
using namespace obsplan::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("start inside an object's region gives a zero edge") {
  const Scenario sc(make_instance({make_object(Point2(10, 10), 0.0), make_object(Point2(100, 100), 0.0)},
                                  Point2(15, 10)));
  const auto g = build_cluster_graph(sc);
  CHECK(g.dist(0, 1) == 0.0);
  CHECK(g.dist(0, 2) > 0.0);
}

TEST_CASE("back-to-back objects far apart") {
  const Scenario sc(make_instance({make_object(Point2(50, 50), kPi), make_object(Point2(80, 50), 0.0)},
                                  Point2(0, 0)));
  const auto g = build_cluster_graph(sc);
  CHECK(g.dist(1, 2) >= 30.0 - 2 * 10.0);
  CHECK(g.dist(1, 2) <= 30.0 + 2 * 10.0);
  CHECK_FALSE(regions_overlap(sc.objects()[0], sc.objects()[1], sc.sensing(), 0.5));
}

TEST_CASE("objects facing each other 5 m apart overlap") {
  const Object a = make_object(Point2(50, 50), 0.0);
  const Object b = make_object(Point2(55, 50), kPi);
  const SensingSpec s = paper_sensing();
  // (52.5, 50) is 2.5 m head-on from both.
  CHECK(can_observe(a, Point2(52.5, 50), s));
  CHECK(can_observe(b, Point2(52.5, 50), s));
  CHECK(regions_overlap(a, b, s, 0.5));
  const Scenario sc(make_instance({a, b}, Point2(0, 0)));
  CHECK(build_cluster_graph(sc).dist(1, 2) == 0.0);
}

TEST_CASE("lower bound on hand-built graphs") {
  ClusterGraph g;
  g.dist = WeightedGraph::Zero(3, 3);
  g.dist(0, 1) = g.dist(1, 0) = 10;
  g.dist(0, 2) = g.dist(2, 0) = 12;
  g.dist(1, 2) = g.dist(2, 1) = 5;
  CHECK(lower_bound(g) == doctest::Approx(15.0));

  ClusterGraph zero;
  zero.dist = WeightedGraph::Zero(4, 4);
  CHECK(lower_bound(zero) == 0.0);
}

TEST_CASE("all regions overlapping and containing the start") {
  // Three objects around a common point, each facing it from 5 m.
  std::vector<Object> objs;
  for (int k = 0; k < 3; ++k) {
    const double ang = 2 * kPi * k / 3;
    objs.push_back(make_object(Point2(50 + 5 * std::cos(ang), 50 + 5 * std::sin(ang)), ang + kPi));
  }
  const Scenario sc(make_instance(objs, Point2(50, 50)));
  CHECK(lower_bound(sc) == 0.0);
}

TEST_CASE("cluster graph invariants and plan validity") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int n = 3 + static_cast<int>(seed % 4);
    const Scenario sc(gen_instance(n, 200.0, paper_sensing(), 0.5, seed));
    const auto g = build_cluster_graph(sc);
    for (int i = 0; i <= n; ++i) {
      CHECK(g.dist(i, i) == 0.0);
      for (int j = 0; j <= n; ++j) {
        CHECK(g.dist(i, j) == g.dist(j, i));
        CHECK(g.dist(i, j) >= 0.0);
        if (i > 0 && j > 0) {
          CHECK(g.dist(i, j) <= distance(sc.objects()[i - 1].position, sc.objects()[j - 1].position) + 20.0 + 1e-9);
        }
      }
    }
    const double lb = lower_bound(g);
    const std::vector<double> qs{sc.q_star(0.3), sc.q_star(0.9)};
    for (const auto& plan : brute_force_plans(sc, qs)) {
      if (plan) CHECK(lb <= plan->total_length + 1e-9);
    }

    // Relabelling the objects leaves the bound unchanged.
    Instance shuffled = sc.instance();
    std::reverse(shuffled.objects.begin(), shuffled.objects.end());
    CHECK(lower_bound(Scenario(shuffled)) == doctest::Approx(lb).epsilon(1e-12));
  }
}
