#include "obsplan/discretize.hpp"

#include <algorithm>
#include <cmath>

namespace obsplan {

namespace {

constexpr double kBoundaryTol = 1e-12;

}  // namespace

double pairwise_diameter(std::span<const Object> objects) {
  if (objects.size() < 2) {
    throw DomainError("pairwise_diameter: at least two objects are required");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t j = i + 1; j < objects.size(); ++j) {
      best = std::max(best, distance(objects[i].position, objects[j].position));
    }
  }
  return best;
}

GridSpec build_grid(const SensingSpec& s, int n, double diameter, double epsilon) {
  s.validate();
  if (!(epsilon > 0.0) || epsilon > 1.0) throw DomainError("epsilon must lie in (0, 1]");
  if (n < 2) throw DomainError("build_grid: n must be >= 2");
  if (!(diameter > 0.0)) throw DomainError("build_grid: object diameter must be > 0");

  GridSpec g;
  g.epsilon = epsilon;
  g.delta = epsilon * diameter / n;

  // Rings: each step is capped by the mesh pitch and by a (1 + eps) change
  // of the distance factor a / (l + b)^2.
  const double ring_growth = std::sqrt(1.0 + epsilon);
  g.ring_boundaries.push_back(s.d_min);
  double l = s.d_min;
  while (s.d_max - l > kBoundaryTol * s.d_max) {
    const double by_pitch = l + g.delta;
    const double by_quality = (l + s.b) * ring_growth - s.b;
    double next = std::min({by_pitch, by_quality, s.d_max});
    if (s.d_max - next <= kBoundaryTol * s.d_max) next = s.d_max;
    g.radial_step = std::max(g.radial_step, next - l);
    g.ring_boundaries.push_back(next);
    l = next;
  }

  // Angles per ring: arc length at the outer radius capped by delta, cosine
  // factor capped by (1 + eps). Built on the positive side, then mirrored.
  for (int k = 0; k + 1 < static_cast<int>(g.ring_boundaries.size()); ++k) {
    const double outer = g.ring_boundaries[k + 1];
    std::vector<double> side{0.0};
    double a = 0.0;
    while (s.theta - a > kBoundaryTol) {
      const double by_arc = a + g.delta / outer;
      const double by_cos = std::acos(std::clamp(std::cos(a) / (1.0 + epsilon), -1.0, 1.0));
      double next = std::min({by_arc, by_cos, s.theta});
      if (s.theta - next <= kBoundaryTol) next = s.theta;
      g.angular_arc_step = std::max(g.angular_arc_step, (next - a) * outer);
      side.push_back(next);
      a = next;
    }
    std::vector<double> full;
    full.reserve(2 * side.size() - 1);
    for (auto it = side.rbegin(); it != side.rend(); ++it) full.push_back(-*it);
    full.insert(full.end(), side.begin() + 1, side.end());
    g.angle_boundaries.push_back(std::move(full));
  }
  return g;
}

std::vector<ObservationPoint> canonical_points(const SensingSpec& s, const GridSpec& grid) {
  const Object canonical{Point2::Zero(), 0.0, 1.0};
  std::vector<ObservationPoint> out;
  for (int k = 0; k < grid.ring_count(); ++k) {
    const double r = grid.ring_boundaries[k];
    const auto& bounds = grid.angle_boundaries[k];
    const int per_side = static_cast<int>(bounds.size() - 1) / 2;
    // Segment [bounds[m], bounds[m+1]]; its axis-nearer corner sits at
    // index m + 1 on the negative side and m on the positive side.
    for (int idx = -(per_side - 1); idx <= per_side - 1; ++idx) {
      const double angle = bounds[per_side + idx];
      ObservationPoint p;
      p.position = Point2(r * std::cos(angle), r * std::sin(angle));
      p.object_index = 0;
      p.ring_index = k;
      p.angle_index = idx;
      p.own_quality = quality(canonical, p.position, s);
      out.push_back(p);
    }
  }
  return out;
}

std::vector<ObservationPoint> place_points(std::span<const Object> objects, const SensingSpec& s,
                                           const GridSpec& grid) {
  const auto canon = canonical_points(s, grid);
  std::vector<ObservationPoint> out;
  out.reserve(canon.size() * objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const Object& o = objects[i];
    const Eigen::Rotation2Dd rot(o.facing);
    for (const auto& c : canon) {
      ObservationPoint p = c;
      p.position = rot * c.position + o.position;
      p.object_index = static_cast<int>(i);
      p.own_quality = quality(o, p.position, s);
      out.push_back(p);
    }
  }
  return out;
}

std::vector<ObservationPoint> generate_observation_points(std::span<const Object> objects,
                                                          const SensingSpec& s,
                                                          double epsilon) {
  const double diameter = pairwise_diameter(objects);
  const GridSpec grid = build_grid(s, static_cast<int>(objects.size()), diameter, epsilon);
  return place_points(objects, s, grid);
}

}  // namespace obsplan
