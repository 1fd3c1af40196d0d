#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "obsplan/discretize.hpp"
#include "obsplan/geometry.hpp"

namespace obsplan {

struct Instance {
  double map_size = 200.0;
  std::vector<Object> objects;
  Point2 start = Point2::Zero();
  SensingSpec sensing;
  double epsilon = 0.5;
  double q_star_fraction = 0.5;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(objects.size()); }

  /// Throws DomainError on malformed instances.
  void validate() const;
};

/// An instance together with its generated observation points. Every object
/// owns the same number of points, stored contiguously in object order.
class Scenario {
 public:
  explicit Scenario(Instance instance);

  const Instance& instance() const { return instance_; }
  const SensingSpec& sensing() const { return instance_.sensing; }
  const std::vector<Object>& objects() const { return instance_.objects; }
  const Point2& start() const { return instance_.start; }
  int object_count() const { return instance_.size(); }

  const GridSpec& grid() const { return grid_; }
  double diameter() const { return diameter_; }
  std::span<const ObservationPoint> points() const { return points_; }
  int points_per_object() const { return per_object_; }
  std::span<const ObservationPoint> points_of(int object) const {
    return std::span<const ObservationPoint>(points_).subspan(
        static_cast<std::size_t>(object) * per_object_, per_object_);
  }

  /// Best own quality any generated point achieves for a unit-weight object.
  double grid_q_max() const { return grid_q_max_; }

  /// Absolute threshold for a fraction of n * q_max (grid-based, scaled by
  /// the largest object weight).
  double q_star(double fraction) const;

  /// Throws InfeasibleAssumption unless n*q_min <= q* <= n*q_max.
  void check_quality_band(double q_star) const;

 private:
  Instance instance_;
  GridSpec grid_;
  double diameter_ = 0.0;
  std::vector<ObservationPoint> points_;
  int per_object_ = 0;
  double grid_q_max_ = 0.0;
};

}  // namespace obsplan
