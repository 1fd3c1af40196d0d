#pragma once

#include <vector>

#include "obsplan/instance.hpp"
#include "obsplan/tsp.hpp"

namespace obsplan {

/// Vertex 0 is the start; vertex i + 1 is the cluster of every generated
/// point (of any owner) from which object i can be observed.
struct ClusterGraph {
  std::vector<std::vector<int>> clusters;  // indices into Scenario::points(); clusters[0] empty
  WeightedGraph dist;
};

/// Whether the closed effective regions of two objects intersect, judged by
/// sampling each region's boundary at `spacing` and testing containment in
/// the other. Thin crossings narrower than the spacing may be missed.
bool regions_overlap(const Object& a, const Object& b, const SensingSpec& s, double spacing);

ClusterGraph build_cluster_graph(const Scenario& scenario);

/// Minimum spanning tree weight of the cluster graph. No closed tour that
/// observes every object can be shorter.
double lower_bound(const Scenario& scenario);
double lower_bound(const ClusterGraph& graph);

}  // namespace obsplan
