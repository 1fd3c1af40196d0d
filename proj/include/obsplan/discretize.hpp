#pragma once

#include <span>
#include <vector>

#include "obsplan/geometry.hpp"

namespace obsplan {

/// Annular-sector mesh over the effective region of a canonical object
/// (origin, facing +x).
struct GridSpec {
  double epsilon = 0.5;
  double delta = 0.0;             // mesh pitch epsilon * D / n
  double radial_step = 0.0;       // widest ring actually produced
  double angular_arc_step = 0.0;  // widest arc (at a ring's outer radius)
  std::vector<double> ring_boundaries;  // l(0) = d_min ... l(K1) = d_max
  // Per ring, ascending boundaries spanning [-theta, theta], symmetric about 0.
  std::vector<std::vector<double>> angle_boundaries;

  int ring_count() const { return static_cast<int>(ring_boundaries.size()) - 1; }
};

struct ObservationPoint {
  Point2 position = Point2::Zero();
  int object_index = 0;
  int ring_index = 0;
  int angle_index = 0;  // signed: negative on the clockwise side of the axis
  double own_quality = 0.0;
};

/// Largest distance between any two objects.
double pairwise_diameter(std::span<const Object> objects);

GridSpec build_grid(const SensingSpec& s, int n, double diameter, double epsilon);

/// One representative per mesh segment for the canonical object: the inner
/// radius and the angle boundary nearer the axis. The two segments touching
/// the axis share their representative, which is emitted once.
std::vector<ObservationPoint> canonical_points(const SensingSpec& s, const GridSpec& grid);

/// Canonical points rotated onto each object's facing and translated to its
/// position, concatenated in object order.
std::vector<ObservationPoint> generate_observation_points(std::span<const Object> objects,
                                                          const SensingSpec& s,
                                                          double epsilon);

/// Same as above with an already built grid.
std::vector<ObservationPoint> place_points(std::span<const Object> objects, const SensingSpec& s,
                                           const GridSpec& grid);

}  // namespace obsplan
