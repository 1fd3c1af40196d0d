#include "obsplan/pareto_dp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace obsplan {

bool dominates(const PathLabel& a, const PathLabel& b) {
  return a.length <= b.length + kLabelTol && a.quality >= b.quality - kLabelTol;
}

bool ParetoSet::insert(const PathLabel& label) {
  const auto begin = labels_.begin();
  const auto end = labels_.end();
  // Longest label not longer than `label`; it has the best quality of that prefix.
  auto upper = std::upper_bound(begin, end, label.length + kLabelTol,
                                [](double v, const PathLabel& l) { return v < l.length; });
  if (upper != begin && std::prev(upper)->quality >= label.quality - kLabelTol) return false;

  auto first = std::lower_bound(begin, end, label.length - kLabelTol,
                                [](const PathLabel& l, double v) { return l.length < v; });
  auto last = first;
  while (last != end && last->quality <= label.quality + kLabelTol) ++last;
  auto pos = labels_.erase(first, last);
  labels_.insert(pos, label);
  return true;
}

bool ParetoSet::is_strict_frontier() const {
  for (std::size_t k = 1; k < labels_.size(); ++k) {
    if (!(labels_[k].length > labels_[k - 1].length + kLabelTol)) return false;
    if (!(labels_[k].quality > labels_[k - 1].quality + kLabelTol)) return false;
  }
  return true;
}

ParetoSet insert_pruned(ParetoSet set, const PathLabel& label) {
  set.insert(label);
  return set;
}

std::optional<double> run_quality(const Point2& p, std::span<const Object> run,
                                  const SensingSpec& s) {
  double total = 0.0;
  for (const auto& o : run) {
    if (!can_observe(o, p, s)) return std::nullopt;
    total += quality(o, p, s);
  }
  return total;
}

std::size_t DpTable::max_set_size() const {
  std::size_t best = 0;
  for (const auto& row : cells_) {
    for (const auto& cell : row) best = std::max(best, cell.size());
  }
  return best;
}

namespace {

void check_order(std::span<const int> order, int n) {
  if (static_cast<int>(order.size()) != n) throw DomainError("order must list every object once");
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) throw DomainError("order is not a permutation of the objects");
    seen[v] = 1;
  }
}

Point2 point_at(const Scenario& sc, std::span<const int> order, int pos, int point) {
  if (pos == 0) return sc.start();
  return sc.points_of(order[pos - 1])[point].position;
}

// Chain of (pos, point) from the first stop to the closing stop.
std::vector<std::pair<int, int>> stop_chain(const DpTable& table, LabelRef ref) {
  std::vector<std::pair<int, int>> chain;
  while (ref.pos != 0) {
    chain.emplace_back(ref.pos, ref.point);
    const PathLabel& l = table.label(ref);
    assert(l.pred_pos >= 0 && l.pred_pos < ref.pos);
    if (l.pred_pos < 0 || l.pred_pos >= ref.pos) throw std::logic_error("dangling DP backpointer");
    ref = {l.pred_pos, l.pred_point, l.pred_label};
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

DpTable dp_build(const Scenario& scenario, std::span<const int> order, const DpOptions& options) {
  const int n = scenario.object_count();
  check_order(order, n);
  const SensingSpec& s = scenario.sensing();
  const auto& objects = scenario.objects();

  DpTable table;
  table.order_.assign(order.begin(), order.end());
  table.mode_ = options.mode;
  table.pitch_ = scenario.grid().delta;
  table.cells_.resize(n + 1);
  table.cells_[0].resize(1);
  table.cells_[0][0].insert(PathLabel{});

  const bool rounded = options.mode == LengthMode::rounded;
  const double pitch = table.pitch_;

  for (int i = 1; i <= n; ++i) {
    const auto own = scenario.points_of(order[i - 1]);
    auto& row = table.cells_[i];
    row.resize(own.size());
    for (int p = 0; p < static_cast<int>(own.size()); ++p) {
      const Point2& here = own[p].position;
      ParetoSet& target = row[p];
      double run_q = 0.0;
      // Stop at `here` observes the objects at positions j+1..i.
      for (int j = i - 1; j >= 0; --j) {
        if (!options.allow_run_skipping && j < i - 1) break;
        const Object& added = objects[order[j]];
        if (!can_observe(added, here, s)) break;
        run_q += quality(added, here, s);
        const auto& prev_row = table.cells_[j];
        for (int pj = 0; pj < static_cast<int>(prev_row.size()); ++pj) {
          const double step = distance(point_at(scenario, order, j, pj), here);
          const auto labels = prev_row[pj].labels();
          for (int k = 0; k < static_cast<int>(labels.size()); ++k) {
            double len = labels[k].length + step;
            if (rounded) len = std::ceil(len / pitch) * pitch;
            target.insert(PathLabel{len, labels[k].quality + run_q, j, pj, k});
          }
        }
      }
    }
  }
  return table;
}

PlanResult reconstruct(const Scenario& scenario, const DpTable& table, const LabelRef& closing) {
  const auto order = table.order();
  PlanResult plan;
  plan.order_used.assign(order.begin(), order.end());
  plan.total_quality = table.label(closing).quality;

  int prev_pos = 0;
  for (const auto& [pos, point] : stop_chain(table, closing)) {
    Stop stop;
    stop.waypoint = point_at(scenario, order, pos, point);
    for (int q = prev_pos; q < pos; ++q) stop.observes.push_back(order[q]);
    plan.stops.push_back(std::move(stop));
    prev_pos = pos;
  }
  plan.total_length = tour_length(scenario.start(), plan.stops);
  plan.objective = plan.total_length;
  return plan;
}

std::optional<PlanResult> dp_close(const Scenario& scenario, const DpTable& table, double q_star) {
  scenario.check_quality_band(q_star);
  const int last = table.positions() - 1;
  const auto order = table.order();

  std::optional<LabelRef> best;
  double best_value = std::numeric_limits<double>::infinity();
  double best_quality = 0.0;
  std::vector<std::pair<int, int>> best_chain;

  for (int p = 0; p < table.cells_at(last); ++p) {
    const auto labels = table.cell(last, p).labels();
    // Qualities increase with length, so the first qualifying label is the
    // only candidate in this cell.
    auto it = std::find_if(labels.begin(), labels.end(),
                           [&](const PathLabel& l) { return l.quality >= q_star - kLabelTol; });
    if (it == labels.end()) continue;
    const LabelRef ref{last, p, static_cast<int>(it - labels.begin())};
    const double value = it->length + distance(point_at(scenario, order, last, p), scenario.start());

    bool take = false;
    if (!best || value < best_value - kLabelTol) {
      take = true;
    } else if (value <= best_value + kLabelTol) {
      if (it->quality > best_quality + kLabelTol) {
        take = true;
      } else if (it->quality >= best_quality - kLabelTol) {
        take = stop_chain(table, ref) < best_chain;
      }
    }
    if (take) {
      best = ref;
      best_value = value;
      best_quality = it->quality;
      best_chain = stop_chain(table, ref);
    }
  }
  if (!best) return std::nullopt;
  PlanResult plan = reconstruct(scenario, table, *best);
  plan.objective = best_value;
  return plan;
}

std::optional<PlanResult> dp_solve(const Scenario& scenario, std::span<const int> order,
                                   double q_star, const DpOptions& options) {
  scenario.check_quality_band(q_star);
  return dp_close(scenario, dp_build(scenario, order, options), q_star);
}

double tour_length(const Point2& start, const std::vector<Stop>& stops) {
  double total = 0.0;
  Point2 at = start;
  for (const auto& s : stops) {
    total += distance(at, s.waypoint);
    at = s.waypoint;
  }
  return total + distance(at, start);
}

double recompute_quality(const Scenario& scenario, const std::vector<Stop>& stops) {
  double total = 0.0;
  for (const auto& s : stops) {
    for (int o : s.observes) total += quality(scenario.objects()[o], s.waypoint, scenario.sensing());
  }
  return total;
}

}  // namespace obsplan
