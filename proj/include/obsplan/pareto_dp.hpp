#pragma once

#include <optional>
#include <span>
#include <vector>

#include "obsplan/instance.hpp"

namespace obsplan {

/// Tolerance used for length/quality equality throughout the DP.
inline constexpr double kLabelTol = 1e-9;

/// A (length, quality) pair with a backpointer into an earlier DP cell.
struct PathLabel {
  double length = 0.0;
  double quality = 0.0;
  int pred_pos = -1;
  int pred_point = -1;
  int pred_label = -1;
};

/// Weak Pareto dominance: a is no longer and no worse in quality than b.
/// Covers the strict cases as well as exact duplicates.
bool dominates(const PathLabel& a, const PathLabel& b);

/// Pareto frontier kept sorted by length; qualities strictly increase along it.
class ParetoSet {
 public:
  /// Inserts `label` unless an existing label dominates it, evicting every
  /// label it dominates. Returns whether the label was kept.
  bool insert(const PathLabel& label);

  std::span<const PathLabel> labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  /// Sorted by length, strictly increasing in both coordinates.
  bool is_strict_frontier() const;

 private:
  std::vector<PathLabel> labels_;
};

ParetoSet insert_pruned(ParetoSet set, const PathLabel& label);

/// Summed quality of `run` seen from `p`, or nullopt if any object of the
/// run is not observable from there.
std::optional<double> run_quality(const Point2& p, std::span<const Object> run,
                                  const SensingSpec& s);

enum class LengthMode {
  exact,
  rounded,  // stored lengths rounded up to multiples of the mesh pitch
};

struct DpOptions {
  LengthMode mode = LengthMode::exact;
  // When false every stop observes exactly one object (the ILP's semantics).
  bool allow_run_skipping = true;
};

struct Stop {
  Point2 waypoint = Point2::Zero();
  std::vector<int> observes;
};

struct PlanResult {
  double total_length = 0.0;  // recomputed closed polyline length
  double objective = 0.0;     // DP objective; equals total_length in exact mode
  double total_quality = 0.0;
  std::vector<Stop> stops;
  std::vector<int> order_used;
};

struct LabelRef {
  int pos = 0;
  int point = 0;
  int label = 0;
};

/// Filled DP over one visiting order. Position 0 is the start; position i
/// holds one Pareto set per observation point of the i-th ordered object.
class DpTable {
 public:
  int positions() const { return static_cast<int>(cells_.size()); }
  int cells_at(int pos) const { return static_cast<int>(cells_[pos].size()); }
  const ParetoSet& cell(int pos, int point) const { return cells_[pos][point]; }
  const PathLabel& label(const LabelRef& ref) const {
    return cells_[ref.pos][ref.point].labels()[ref.label];
  }
  std::span<const int> order() const { return order_; }
  LengthMode mode() const { return mode_; }
  double pitch() const { return pitch_; }
  std::size_t max_set_size() const;

 private:
  friend DpTable dp_build(const Scenario&, std::span<const int>, const DpOptions&);

  std::vector<std::vector<ParetoSet>> cells_;
  std::vector<int> order_;
  LengthMode mode_ = LengthMode::exact;
  double pitch_ = 0.0;
};

/// Fills the table for `order` (a permutation of object indices). The
/// table does not depend on the quality threshold.
DpTable dp_build(const Scenario& scenario, std::span<const int> order,
                 const DpOptions& options = {});

/// Closes the tour back to the start, keeping only labels whose quality
/// reaches `q_star`. nullopt when no label qualifies.
std::optional<PlanResult> dp_close(const Scenario& scenario, const DpTable& table, double q_star);

std::optional<PlanResult> dp_solve(const Scenario& scenario, std::span<const int> order,
                                   double q_star, const DpOptions& options = {});

/// Follows backpointers from `closing` to the start label.
PlanResult reconstruct(const Scenario& scenario, const DpTable& table, const LabelRef& closing);

/// Closed polyline length start -> stops -> start.
double tour_length(const Point2& start, const std::vector<Stop>& stops);

/// Quality recomputed from geometry at each stop.
double recompute_quality(const Scenario& scenario, const std::vector<Stop>& stops);

}  // namespace obsplan
