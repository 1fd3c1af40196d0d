#include "obsplan/tsp.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "obsplan/errors.hpp"

namespace obsplan {

namespace {

constexpr double kImproveTol = 1e-10;

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

struct Edge {
  double w;
  int u;
  int v;
  bool operator<(const Edge& o) const { return std::tie(w, u, v) < std::tie(o.w, o.u, o.v); }
};

std::vector<Edge> sorted_edges(const WeightedGraph& g, std::span<const int> vertices) {
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      int u = std::min(vertices[a], vertices[b]);
      int v = std::max(vertices[a], vertices[b]);
      edges.push_back({g(u, v), u, v});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<int> euler_walk(int n, const std::vector<std::pair<int, int>>& edges, int start) {
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, edge id)
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, e);
    adj[edges[e].second].emplace_back(edges[e].first, e);
  }
  std::vector<char> used(edges.size(), 0);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<int> stack{start};
  std::vector<int> walk;
  while (!stack.empty()) {
    const int v = stack.back();
    auto& c = cursor[v];
    while (c < adj[v].size() && used[adj[v][c].second]) ++c;
    if (c == adj[v].size()) {
      walk.push_back(v);
      stack.pop_back();
    } else {
      used[adj[v][c].second] = 1;
      stack.push_back(adj[v][c].first);
    }
  }
  std::reverse(walk.begin(), walk.end());
  return walk;
}

std::vector<int> christofides_greedy(const WeightedGraph& g, int start) {
  const int n = static_cast<int>(g.rows());
  SpanningTree tree = mst(g);
  std::vector<int> degree(n, 0);
  for (auto [u, v] : tree.edges) {
    ++degree[u];
    ++degree[v];
  }
  std::vector<int> odd;
  for (int v = 0; v < n; ++v) {
    if (degree[v] % 2) odd.push_back(v);
  }
  auto multigraph = tree.edges;
  std::vector<char> matched(n, 0);
  for (const Edge& e : sorted_edges(g, odd)) {
    if (matched[e.u] || matched[e.v]) continue;
    matched[e.u] = matched[e.v] = 1;
    multigraph.emplace_back(e.u, e.v);
  }
  std::vector<int> tour;
  std::vector<char> seen(n, 0);
  for (int v : euler_walk(n, multigraph, start)) {
    if (!seen[v]) {
      seen[v] = 1;
      tour.push_back(v);
    }
  }
  return tour;
}

std::vector<int> nearest_neighbour(const WeightedGraph& g, int start) {
  const int n = static_cast<int>(g.rows());
  std::vector<char> seen(n, 0);
  std::vector<int> tour{start};
  seen[start] = 1;
  for (int step = 1; step < n; ++step) {
    const int at = tour.back();
    int next = -1;
    for (int v = 0; v < n; ++v) {
      if (!seen[v] && (next < 0 || g(at, v) < g(at, next))) next = v;
    }
    seen[next] = 1;
    tour.push_back(next);
  }
  return tour;
}

}  // namespace

WeightedGraph euclidean_graph(std::span<const Point2> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  WeightedGraph g = WeightedGraph::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) g(i, j) = g(j, i) = distance(points[i], points[j]);
  }
  return g;
}

SpanningTree mst(const WeightedGraph& g) {
  const int n = static_cast<int>(g.rows());
  if (n == 0) throw DomainError("mst: empty graph");
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  SpanningTree tree;
  DisjointSets sets(n);
  for (const Edge& e : sorted_edges(g, all)) {
    if (sets.unite(e.u, e.v)) {
      tree.edges.emplace_back(e.u, e.v);
      tree.weight += e.w;
      if (static_cast<int>(tree.edges.size()) == n - 1) break;
    }
  }
  return tree;
}

double cycle_length(const WeightedGraph& g, std::span<const int> tour) {
  if (tour.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < tour.size(); ++k) total += g(tour[k], tour[(k + 1) % tour.size()]);
  return total;
}

int two_opt(const WeightedGraph& g, std::vector<int>& tour, int max_passes) {
  const int n = static_cast<int>(tour.size());
  if (n < 4) return 0;
  int passes = 0;
  bool improved = true;
  while (improved && passes < max_passes) {
    improved = false;
    ++passes;
    // Reverse tour[i..k]; tour[0] never moves.
    for (int i = 1; i < n - 1; ++i) {
      for (int k = i + 1; k < n; ++k) {
        const int a = tour[i - 1];
        const int b = tour[i];
        const int c = tour[k];
        const int d = tour[(k + 1) % n];
        const double gain = g(a, b) + g(c, d) - g(a, c) - g(b, d);
        if (gain > kImproveTol) {
          std::reverse(tour.begin() + i, tour.begin() + k + 1);
          improved = true;
        }
      }
    }
  }
  return passes;
}

bool is_two_opt_local_optimum(const WeightedGraph& g, std::span<const int> tour, double tol) {
  const int n = static_cast<int>(tour.size());
  for (int i = 1; i < n - 1; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const double gain = g(tour[i - 1], tour[i]) + g(tour[k], tour[(k + 1) % n]) -
                          g(tour[i - 1], tour[k]) - g(tour[i], tour[(k + 1) % n]);
      if (gain > tol) return false;
    }
  }
  return true;
}

std::vector<int> tsp_tour(const WeightedGraph& g, int start) {
  const int n = static_cast<int>(g.rows());
  if (n < 2) throw DomainError("tsp_tour: at least two vertices are required");
  if (start < 0 || start >= n) throw DomainError("tsp_tour: start vertex out of range");

  std::vector<int> a = christofides_greedy(g, start);
  two_opt(g, a);
  std::vector<int> b = nearest_neighbour(g, start);
  two_opt(g, b);
  return cycle_length(g, b) < cycle_length(g, a) - kImproveTol ? b : a;
}

}  // namespace obsplan
