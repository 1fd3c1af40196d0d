#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obsplan/instance.hpp"

namespace obsplan {

// Zone-based tour model: zone 0 is the start (a single point), zone i >= 1
// holds the own observation points of object i - 1. Binary X_i_j_p1_p2
// selects the edge from point p1 of zone i to point p2 of zone j; u_i are
// the MTZ ordering variables.
//
// The start/end degree rows of the two-terminal formulation collapse onto
// the single start zone: eq8 matches in- and out-degree per object point,
// eq9 does the same for the start point, and eq10 (MTZ) skips the start.

struct EdgeVar {
  int from_zone = 0;
  int to_zone = 0;
  int from_point = 0;
  int to_point = 0;
  double cost = 0.0;
};

enum class RowSense { le, ge, eq };

struct Term {
  int var = 0;  // binaries first, then u_1..u_n
  double coeff = 0.0;
};

struct Row {
  std::string name;
  int equation = 0;
  std::vector<Term> terms;
  RowSense sense = RowSense::eq;
  double rhs = 0.0;
};

struct IlpModel {
  int objects = 0;
  double q_star = 0.0;
  double big_n = 0.0;
  std::vector<std::vector<Point2>> zone_points;
  std::vector<std::vector<double>> zone_quality;
  std::vector<EdgeVar> edges;
  std::vector<Row> rows;

  int zone_count() const { return static_cast<int>(zone_points.size()); }
  int binary_count() const { return static_cast<int>(edges.size()); }
  int u_var(int zone) const { return binary_count() + zone - 1; }
  int variable_count() const { return binary_count() + objects; }
  std::string variable_name(int var) const;
  int count_rows(int equation) const;
};

IlpModel build_model(const Scenario& scenario, double q_star);

/// Deterministic LP-format text: objective, rows named eqK_*, bounds, binaries.
void write_lp(const IlpModel& model, std::ostream& out);
void write_lp(const IlpModel& model, const std::filesystem::path& path);

struct EdgeName {
  int from_zone;
  int to_zone;
  int from_point;
  int to_point;
};

/// Parses "X_i_j_p1_p2"; nullopt for anything else.
std::optional<EdgeName> parse_edge_name(std::string_view name);

using Assignment = std::map<std::string, double>;

/// Reads "name value" pairs (also "name = value"), skipping blank and
/// comment lines.
Assignment read_assignment(std::istream& in);

/// Assignment for a closed tour given as (zone, point) pairs after the start.
Assignment encode_tour(const IlpModel& model, const std::vector<std::pair<int, int>>& stops);

struct ValidationReport {
  bool valid = false;
  std::vector<std::string> violations;
  std::vector<std::pair<int, int>> tour;  // (zone, point) from the start onward
  double objective = 0.0;
  double length = 0.0;
  double quality = 0.0;
};

/// Checks every constraint family numerically, extracts the tour and
/// recomputes its length and quality from geometry.
ValidationReport validate_solution(const IlpModel& model, const Assignment& assignment,
                                   const Scenario& scenario);

}  // namespace obsplan
