#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "obsplan/lower_bound.hpp"
#include "obsplan/pareto_dp.hpp"

namespace obsplan {

enum class OrderMethod { rs, npf, gtsp, tspo, lbtsp, brute };

std::string_view to_string(OrderMethod m);
/// Accepts the upper- or lower-case tag ("GTSP", "gtsp").
OrderMethod parse_order_method(std::string_view tag);

struct VisitOrder {
  std::vector<int> sequence;  // object indices; the start is implicit at both ends
  OrderMethod method = OrderMethod::tspo;
};

/// An order together with the flyable path the heuristic built it from.
struct SeededOrder {
  VisitOrder order;
  std::vector<Stop> initial_path;
};

bool is_permutation_of(std::span<const int> sequence, int n);

/// One uniformly drawn observation point per object, toured with tsp_tour.
SeededOrder rs_order(const Scenario& scenario, std::uint64_t seed);

/// Greedy: fly to the nearest point of an unobserved object and mark every
/// object observable from it. Objects seen at one stop are ordered by index
/// with the point's owner last, so the stop is a run the DP can reproduce.
SeededOrder npf_order(const Scenario& scenario);

/// Generalized-TSP heuristic over zones (an object's own points): greedy
/// nearest-zone cheapest insertion, then alternating zone-level 2-opt and
/// per-zone point re-selection until the tour stops improving.
SeededOrder gtsp_order(const Scenario& scenario);

/// tsp_tour over the start and the object positions.
VisitOrder tspo_order(const Scenario& scenario);

/// tsp_tour over the cluster min-distance graph.
VisitOrder lbtsp_order(const Scenario& scenario, const ClusterGraph& graph);

inline constexpr int kMaxBruteObjects = 8;

/// Every permutation up to reversal, i.e. n!/2 orders for n >= 2.
std::vector<VisitOrder> enumerate_orders(int n, int cap = kMaxBruteObjects);

/// Exhaustive order search: runs the DP for both directions of every
/// enumerated order and keeps, per threshold, the shortest plan (ties by
/// lexicographically smallest order). Tables are shared across thresholds.
std::vector<std::optional<PlanResult>> brute_force_plans(const Scenario& scenario,
                                                         std::span<const double> q_stars,
                                                         const DpOptions& options = {},
                                                         int workers = 1);

}  // namespace obsplan
