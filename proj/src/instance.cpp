#include "obsplan/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace obsplan {

namespace {

constexpr double kBandTol = 1e-9;

double max_weight(const std::vector<Object>& objects) {
  double w = 0.0;
  for (const auto& o : objects) w = std::max(w, o.weight);
  return w;
}

double min_weight(const std::vector<Object>& objects) {
  double w = objects.empty() ? 0.0 : objects.front().weight;
  for (const auto& o : objects) w = std::min(w, o.weight);
  return w;
}

}  // namespace

void Instance::validate() const {
  sensing.validate();
  if (objects.size() < 2) throw DomainError("instance needs at least two objects");
  if (!(epsilon > 0.0) || epsilon > 1.0) throw DomainError("epsilon must lie in (0, 1]");
  if (!(q_star_fraction > 0.0) || q_star_fraction > 1.0) {
    throw DomainError("q_star_fraction must lie in (0, 1]");
  }
  if (!start.allFinite()) throw DomainError("start point must be finite");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const Object& o = objects[i];
    if (!o.position.allFinite()) throw DomainError("object " + std::to_string(i) + " is not finite");
    if (!(o.weight >= 0.0)) throw DomainError("object " + std::to_string(i) + " has negative weight");
    if (map_size > 0.0 && (o.position.x() < 0.0 || o.position.y() < 0.0 ||
                           o.position.x() > map_size || o.position.y() > map_size)) {
      throw DomainError("object " + std::to_string(i) + " lies outside the map");
    }
  }
}

Scenario::Scenario(Instance instance) : instance_(std::move(instance)) {
  instance_.validate();
  for (auto& o : instance_.objects) o.facing = normalize_angle(o.facing);
  diameter_ = pairwise_diameter(instance_.objects);
  grid_ = build_grid(instance_.sensing, instance_.size(), diameter_, instance_.epsilon);
  points_ = place_points(instance_.objects, instance_.sensing, grid_);
  per_object_ = static_cast<int>(points_.size()) / instance_.size();
  if (per_object_ == 0) throw DomainError("discretization produced no observation points");

  const Object unit{Point2::Zero(), 0.0, 1.0};
  for (const auto& p : canonical_points(instance_.sensing, grid_)) {
    grid_q_max_ = std::max(grid_q_max_, quality(unit, p.position, instance_.sensing));
  }
  check_quality_band(q_star(instance_.q_star_fraction));
}

double Scenario::q_star(double fraction) const {
  return fraction * object_count() * grid_q_max_ * max_weight(instance_.objects);
}

void Scenario::check_quality_band(double q_star) const {
  const int n = object_count();
  const double lo = n * quality_bounds(instance_.sensing).q_min_single * min_weight(instance_.objects);
  const double hi = n * grid_q_max_ * max_weight(instance_.objects);
  if (q_star < lo - kBandTol || q_star > hi + kBandTol) {
    throw InfeasibleAssumption("quality threshold " + std::to_string(q_star) +
                               " outside the solvable band [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
  }
}

}  // namespace obsplan
