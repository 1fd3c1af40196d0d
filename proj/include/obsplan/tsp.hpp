#pragma once

#include <Eigen/Core>

#include <span>
#include <utility>
#include <vector>

#include "obsplan/geometry.hpp"

namespace obsplan {

/// Symmetric weight matrix with zero diagonal. Triangle inequality is not assumed.
using WeightedGraph = Eigen::MatrixXd;

WeightedGraph euclidean_graph(std::span<const Point2> points);

struct SpanningTree {
  std::vector<std::pair<int, int>> edges;  // (u, v) with u < v
  double weight = 0.0;
};

/// Kruskal; equal weights resolve to the smallest (u, v) pair first.
SpanningTree mst(const WeightedGraph& g);

/// Closed-tour length of a vertex cycle (the return edge is implied).
double cycle_length(const WeightedGraph& g, std::span<const int> tour);

/// First-improvement 2-opt with `tour[0]` pinned. Returns passes used.
int two_opt(const WeightedGraph& g, std::vector<int>& tour, int max_passes = 50);

/// True when no single 2-opt move shortens the tour by more than `tol`.
bool is_two_opt_local_optimum(const WeightedGraph& g, std::span<const int> tour,
                              double tol = 1e-9);

/// Hamiltonian cycle starting at `start` (the return edge is implied).
/// Christofides-style construction with greedy odd-vertex matching,
/// shortcutting and 2-opt; a nearest-neighbour tour, also 2-opted, competes
/// and the shorter of the two is returned.
std::vector<int> tsp_tour(const WeightedGraph& g, int start = 0);

}  // namespace obsplan
