#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "obsplan/orders.hpp"

namespace obsplan {

/// Uniform positions in [0, map_size]^2 and facings in [0, 2*pi), seeded.
Instance gen_instance(int n, double map_size, const SensingSpec& sensing, double epsilon,
                      std::uint64_t seed, const Point2& start = Point2::Zero());

struct ExperimentRecord {
  std::uint64_t seed = 0;
  int n = 0;
  double d_max = 0.0;
  double epsilon = 0.0;
  std::string method;
  double q_star_frac = 0.0;
  double length = 0.0;
  double quality = 0.0;
  double lb = 0.0;
  double ratio_lb = 0.0;     // NaN when infeasible
  double ratio_brute = 0.0;  // NaN without a feasible brute record; +inf if only brute is feasible
  bool feasible = false;
  double dp_ms = 0.0;  // wall time of table build + closure; 0 for paths the DP did not produce
};

struct CaseConfig {
  std::vector<OrderMethod> methods{OrderMethod::rs, OrderMethod::npf, OrderMethod::gtsp,
                                   OrderMethod::tspo, OrderMethod::lbtsp, OrderMethod::brute};
  std::vector<double> q_star_fractions{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  bool initial_paths = true;  // RS-init, NPF-init, GTSP-init records
  bool max_quality_path = true;  // MaxQ record
  DpOptions dp;
  int workers = 1;  // used by the brute-force order search
};

/// Runs every configured method on one instance. Brute force is skipped
/// silently above kMaxBruteObjects. Infeasible plans become records.
std::vector<ExperimentRecord> run_case(const Instance& instance, const CaseConfig& config);

/// One record per method per threshold for the seeded order heuristics'
/// own paths, tagged "<METHOD>-init".
std::string initial_path_tag(OrderMethod m);

struct SummaryRow {
  int n = 0;
  double d_max = 0.0;
  std::string method;
  double q_star_frac = 0.0;
  int count = 0;
  int feasible = 0;
  double satisfaction_pct = 0.0;
  double mean_ratio_brute = 0.0;  // NaN without brute data
  double median_ratio_brute = 0.0;
  double mean_ratio_lb = 0.0;
  double median_ratio_lb = 0.0;
  double mean_reduction_pct = 0.0;  // "-init" rows only: how much the DP shortens feasible seeds
  double mean_length = 0.0;
  double mean_dp_ms = 0.0;
};

/// Groups by (n, d_max, method, q*) in sorted key order.
std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

double median(std::vector<double> values);

struct BenchConfig {
  std::vector<int> ns{3, 4, 5};
  std::vector<double> d_maxes{10.0};
  int cases = 50;
  double map_size = 200.0;
  SensingSpec sensing;
  double epsilon = 0.5;
  std::uint64_t base_seed = 1;
  Point2 start = Point2::Zero();
  CaseConfig case_config;
};

/// Seed of case `index` for object count `n`; shared across the d_max sweep.
std::uint64_t case_seed(std::uint64_t base, int n, int index);

/// Full sweep over (n, case, d_max); cases are distributed across
/// `workers` threads and merged in sweep order.
std::vector<ExperimentRecord> run_benchmark(const BenchConfig& config, int workers = 1);

// Serialization.
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::filesystem::path& path);
void save_json(const nlohmann::json& j, const std::filesystem::path& path);

nlohmann::json plan_to_json(std::string_view method, const std::optional<PlanResult>& plan,
                            double q_star);

void write_points_csv(std::ostream& out, std::span<const ObservationPoint> points);
void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace obsplan
