#include "obsplan/orders.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <random>

#include "obsplan/parallel.hpp"

namespace obsplan {

namespace {

constexpr double kImproveTol = 1e-10;

std::vector<int> order_from_tour(std::span<const int> tour) {
  // Vertex 0 is the start, vertex v the object v - 1.
  std::vector<int> order;
  for (std::size_t k = 1; k < tour.size(); ++k) order.push_back(tour[k] - 1);
  return order;
}

Stop single_stop(const ObservationPoint& p) { return Stop{p.position, {p.object_index}}; }

bool better_plan(const PlanResult& a, const PlanResult& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  return a.order_used < b.order_used;
}

}  // namespace

std::string_view to_string(OrderMethod m) {
  switch (m) {
    case OrderMethod::rs: return "RS";
    case OrderMethod::npf: return "NPF";
    case OrderMethod::gtsp: return "GTSP";
    case OrderMethod::tspo: return "TSPO";
    case OrderMethod::lbtsp: return "LBTSP";
    case OrderMethod::brute: return "BRUTE";
  }
  return "?";
}

OrderMethod parse_order_method(std::string_view tag) {
  std::string up(tag);
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto m : {OrderMethod::rs, OrderMethod::npf, OrderMethod::gtsp, OrderMethod::tspo,
                 OrderMethod::lbtsp, OrderMethod::brute}) {
    if (to_string(m) == up) return m;
  }
  throw DomainError("unknown order method '" + std::string(tag) + "'");
}

bool is_permutation_of(std::span<const int> sequence, int n) {
  if (static_cast<int>(sequence.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : sequence) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

SeededOrder rs_order(const Scenario& scenario, std::uint64_t seed) {
  const int n = scenario.object_count();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, scenario.points_per_object() - 1);
  std::vector<const ObservationPoint*> picks;
  std::vector<Point2> vertices{scenario.start()};
  for (int i = 0; i < n; ++i) {
    picks.push_back(&scenario.points_of(i)[pick(rng)]);
    vertices.push_back(picks.back()->position);
  }
  const auto tour = tsp_tour(euclidean_graph(vertices), 0);
  SeededOrder out;
  out.order = {order_from_tour(tour), OrderMethod::rs};
  for (int obj : out.order.sequence) out.initial_path.push_back(single_stop(*picks[obj]));
  return out;
}

SeededOrder npf_order(const Scenario& scenario) {
  const int n = scenario.object_count();
  const auto points = scenario.points();
  const auto& objects = scenario.objects();
  std::vector<char> observed(n, 0);
  int remaining = n;
  Point2 at = scenario.start();

  SeededOrder out;
  out.order.method = OrderMethod::npf;
  while (remaining > 0) {
    int next = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int p = 0; p < static_cast<int>(points.size()); ++p) {
      if (observed[points[p].object_index]) continue;
      const double d = distance(at, points[p].position);
      if (d < best) {
        best = d;
        next = p;
      }
    }
    const ObservationPoint& stop_point = points[next];
    Stop stop{stop_point.position, {}};
    for (int o = 0; o < n; ++o) {
      if (!observed[o] && o != stop_point.object_index &&
          can_observe(objects[o], stop_point.position, scenario.sensing())) {
        stop.observes.push_back(o);
      }
    }
    stop.observes.push_back(stop_point.object_index);
    for (int o : stop.observes) {
      observed[o] = 1;
      out.order.sequence.push_back(o);
      --remaining;
    }
    out.initial_path.push_back(std::move(stop));
    at = stop_point.position;
  }
  return out;
}

SeededOrder gtsp_order(const Scenario& scenario) {
  const int n = scenario.object_count();
  const int per = scenario.points_per_object();
  std::vector<int> chosen(n, -1);
  auto where = [&](int zone) -> Point2 {
    return zone == 0 ? scenario.start() : scenario.points_of(zone - 1)[chosen[zone - 1]].position;
  };

  // Greedy nearest-zone insertion at the cheapest position and point.
  std::vector<int> tour{0};
  std::vector<char> placed(n, 0);
  for (int step = 0; step < n; ++step) {
    int zone = -1;
    double nearest = std::numeric_limits<double>::infinity();
    for (int z = 1; z <= n; ++z) {
      if (placed[z - 1]) continue;
      for (const auto& p : scenario.points_of(z - 1)) {
        for (int t : tour) {
          const double d = distance(where(t), p.position);
          if (d < nearest) {
            nearest = d;
            zone = z;
          }
        }
      }
    }
    int best_point = 0;
    std::size_t best_slot = 1;
    double best_cost = std::numeric_limits<double>::infinity();
    const auto own = scenario.points_of(zone - 1);
    for (int p = 0; p < per; ++p) {
      for (std::size_t k = 0; k < tour.size(); ++k) {
        const Point2 a = where(tour[k]);
        const Point2 b = where(tour[(k + 1) % tour.size()]);
        const double cost = distance(a, own[p].position) + distance(own[p].position, b) - distance(a, b);
        if (cost < best_cost) {
          best_cost = cost;
          best_point = p;
          best_slot = k + 1;
        }
      }
    }
    chosen[zone - 1] = best_point;
    placed[zone - 1] = 1;
    tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(best_slot), zone);
  }

  auto current_length = [&] {
    double total = 0.0;
    for (std::size_t k = 0; k < tour.size(); ++k) total += distance(where(tour[k]), where(tour[(k + 1) % tour.size()]));
    return total;
  };

  double length = current_length();
  for (int round = 0; round < 50; ++round) {
    WeightedGraph g = WeightedGraph::Zero(n + 1, n + 1);
    for (int u = 0; u <= n; ++u) {
      for (int v = u + 1; v <= n; ++v) g(u, v) = g(v, u) = distance(where(u), where(v));
    }
    two_opt(g, tour);
    for (std::size_t k = 1; k < tour.size(); ++k) {
      const Point2 prev = where(tour[k - 1]);
      const Point2 next = where(tour[(k + 1) % tour.size()]);
      const auto own = scenario.points_of(tour[k] - 1);
      int pick = chosen[tour[k] - 1];
      double cost = distance(prev, own[pick].position) + distance(own[pick].position, next);
      for (int p = 0; p < per; ++p) {
        const double c = distance(prev, own[p].position) + distance(own[p].position, next);
        if (c < cost - kImproveTol) {
          cost = c;
          pick = p;
        }
      }
      chosen[tour[k] - 1] = pick;
    }
    const double updated = current_length();
    if (!(updated < length - kImproveTol)) break;
    length = updated;
  }

  SeededOrder out;
  out.order = {order_from_tour(tour), OrderMethod::gtsp};
  for (int obj : out.order.sequence) out.initial_path.push_back(single_stop(scenario.points_of(obj)[chosen[obj]]));
  return out;
}

VisitOrder tspo_order(const Scenario& scenario) {
  std::vector<Point2> vertices{scenario.start()};
  for (const auto& o : scenario.objects()) vertices.push_back(o.position);
  return {order_from_tour(tsp_tour(euclidean_graph(vertices), 0)), OrderMethod::tspo};
}

VisitOrder lbtsp_order(const Scenario&, const ClusterGraph& graph) {
  return {order_from_tour(tsp_tour(graph.dist, 0)), OrderMethod::lbtsp};
}

std::vector<VisitOrder> enumerate_orders(int n, int cap) {
  if (n < 1) throw DomainError("enumerate_orders: n must be >= 1");
  if (n > cap) throw DomainError("enumerate_orders: n exceeds the brute-force cap of " + std::to_string(cap));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<VisitOrder> out;
  do {
    if (n == 1 || perm.front() < perm.back()) out.push_back({perm, OrderMethod::brute});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<std::optional<PlanResult>> brute_force_plans(const Scenario& scenario,
                                                         std::span<const double> q_stars,
                                                         const DpOptions& options, int workers) {
  for (double q : q_stars) scenario.check_quality_band(q);
  const auto classes = enumerate_orders(scenario.object_count());
  using Best = std::vector<std::optional<PlanResult>>;
  std::vector<Best> partial(std::max(1, workers), Best(q_stars.size()));

  parallel_chunks(classes.size(), workers, [&](int w, std::size_t begin, std::size_t end) {
    Best& best = partial[w];
    for (std::size_t c = begin; c < end; ++c) {
      std::vector<int> seq = classes[c].sequence;
      for (int dir = 0; dir < 2; ++dir) {
        if (dir == 1) {
          std::reverse(seq.begin(), seq.end());
          if (seq == classes[c].sequence) break;
        }
        const DpTable table = dp_build(scenario, seq, options);
        for (std::size_t q = 0; q < q_stars.size(); ++q) {
          auto plan = dp_close(scenario, table, q_stars[q]);
          if (plan && (!best[q] || better_plan(*plan, *best[q]))) best[q] = std::move(plan);
        }
      }
    }
  });

  Best merged(q_stars.size());
  for (const auto& best : partial) {
    for (std::size_t q = 0; q < q_stars.size(); ++q) {
      if (best[q] && (!merged[q] || better_plan(*best[q], *merged[q]))) merged[q] = best[q];
    }
  }
  return merged;
}

}  // namespace obsplan
