#include "obsplan/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace obsplan {

namespace {

std::vector<Point2> region_boundary(const Object& o, const SensingSpec& s, double spacing) {
  std::vector<Point2> out;
  const Eigen::Rotation2Dd rot(o.facing);
  auto emit = [&](double r, double angle) {
    out.push_back(rot * Point2(r * std::cos(angle), r * std::sin(angle)) + o.position);
  };
  for (double r : {s.d_min, s.d_max}) {
    const int steps = std::max(1, static_cast<int>(std::ceil(2.0 * s.theta * r / spacing)));
    for (int k = 0; k <= steps; ++k) emit(r, -s.theta + 2.0 * s.theta * k / steps);
  }
  const int steps = std::max(1, static_cast<int>(std::ceil((s.d_max - s.d_min) / spacing)));
  for (double angle : {-s.theta, s.theta}) {
    for (int k = 1; k < steps; ++k) emit(s.d_min + (s.d_max - s.d_min) * k / steps, angle);
  }
  return out;
}

double min_cluster_distance(std::span<const ObservationPoint> points, const std::vector<int>& a,
                            const std::vector<int>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (int i : a) {
    for (int j : b) best = std::min(best, distance(points[i].position, points[j].position));
  }
  return best;
}

}  // namespace

bool regions_overlap(const Object& a, const Object& b, const SensingSpec& s, double spacing) {
  if (distance(a.position, b.position) > 2.0 * s.d_max) return false;
  for (const auto& p : region_boundary(a, s, spacing)) {
    if (can_observe(b, p, s)) return true;
  }
  for (const auto& p : region_boundary(b, s, spacing)) {
    if (can_observe(a, p, s)) return true;
  }
  return false;
}

ClusterGraph build_cluster_graph(const Scenario& scenario) {
  const int n = scenario.object_count();
  const auto& objects = scenario.objects();
  const auto points = scenario.points();
  const SensingSpec& s = scenario.sensing();

  ClusterGraph g;
  g.clusters.resize(n + 1);
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < static_cast<int>(points.size()); ++p) {
      if (points[p].object_index == i || can_observe(objects[i], points[p].position, s)) {
        g.clusters[i + 1].push_back(p);
      }
    }
  }

  const double spacing = std::min(scenario.grid().delta, (s.d_max - s.d_min) / 16.0);
  g.dist = WeightedGraph::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    double d = 0.0;
    if (!can_observe(objects[i], scenario.start(), s)) {
      d = std::numeric_limits<double>::infinity();
      for (int p : g.clusters[i + 1]) d = std::min(d, distance(scenario.start(), points[p].position));
    }
    g.dist(0, i + 1) = g.dist(i + 1, 0) = d;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = 0.0;
      if (!regions_overlap(objects[i], objects[j], s, spacing)) {
        d = min_cluster_distance(points, g.clusters[i + 1], g.clusters[j + 1]);
      }
      g.dist(i + 1, j + 1) = g.dist(j + 1, i + 1) = d;
    }
  }
  return g;
}

double lower_bound(const ClusterGraph& graph) { return mst(graph.dist).weight; }

double lower_bound(const Scenario& scenario) { return lower_bound(build_cluster_graph(scenario)); }

}  // namespace obsplan
