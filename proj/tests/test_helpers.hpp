#pragma once

#include <numbers>
#include <numeric>
#include <vector>

#include "obsplan/harness.hpp"

namespace obsplan::testing {

inline SensingSpec paper_sensing(double d_max = 10.0) {
  SensingSpec s;
  s.d_min = 2.0;
  s.d_max = d_max;
  s.theta = std::numbers::pi / 6.0;
  return s;
}

inline Instance make_instance(std::vector<Object> objects, Point2 start, double epsilon = 0.5,
                              double d_max = 10.0, double map_size = 200.0) {
  Instance inst;
  inst.map_size = map_size;
  inst.objects = std::move(objects);
  inst.start = start;
  inst.sensing = paper_sensing(d_max);
  inst.epsilon = epsilon;
  inst.q_star_fraction = 0.3;
  return inst;
}

inline std::vector<int> identity_order(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

/// Objects of a plan's stops, flattened in flight order.
inline std::vector<int> flattened(const PlanResult& plan) {
  std::vector<int> out;
  for (const auto& s : plan.stops) out.insert(out.end(), s.observes.begin(), s.observes.end());
  return out;
}

}  // namespace obsplan::testing
