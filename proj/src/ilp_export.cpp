#include "obsplan/ilp_export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace obsplan {

namespace {

constexpr double kIntTol = 1e-6;

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_terms(std::ostream& out, const IlpModel& model, const std::vector<Term>& terms) {
  int on_line = 0;
  bool first = true;
  for (const Term& t : terms) {
    if (on_line == 6) {
      out << "\n   ";
      on_line = 0;
    }
    const double mag = std::abs(t.coeff);
    if (first) {
      out << (t.coeff < 0 ? "- " : "");
    } else {
      out << (t.coeff < 0 ? " - " : " + ");
    }
    if (mag != 1.0) out << format_number(mag) << ' ';
    out << model.variable_name(t.var);
    first = false;
    ++on_line;
  }
  if (first) out << "0 " << model.variable_name(0);
}

}  // namespace

std::string IlpModel::variable_name(int var) const {
  if (var < binary_count()) {
    const EdgeVar& e = edges[var];
    return "X_" + std::to_string(e.from_zone) + "_" + std::to_string(e.to_zone) + "_" +
           std::to_string(e.from_point) + "_" + std::to_string(e.to_point);
  }
  return "u_" + std::to_string(var - binary_count() + 1);
}

int IlpModel::count_rows(int equation) const {
  int c = 0;
  for (const auto& r : rows) c += r.equation == equation;
  return c;
}

IlpModel build_model(const Scenario& scenario, double q_star) {
  const int n = scenario.object_count();
  IlpModel m;
  m.objects = n;
  m.q_star = q_star;
  m.big_n = n + 1;
  m.zone_points.push_back({scenario.start()});
  m.zone_quality.push_back({0.0});
  for (int i = 0; i < n; ++i) {
    std::vector<Point2> pts;
    std::vector<double> qs;
    for (const auto& p : scenario.points_of(i)) {
      pts.push_back(p.position);
      qs.push_back(p.own_quality);
    }
    if (pts.empty()) throw DomainError("object " + std::to_string(i) + " has no observation points");
    m.zone_points.push_back(std::move(pts));
    m.zone_quality.push_back(std::move(qs));
  }

  const int zones = m.zone_count();
  std::vector<std::vector<int>> out_of(zones), into(zones);
  std::vector<std::vector<std::vector<int>>> out_point(zones), in_point(zones);
  for (int z = 0; z < zones; ++z) {
    out_point[z].resize(m.zone_points[z].size());
    in_point[z].resize(m.zone_points[z].size());
  }
  std::vector<std::vector<std::vector<int>>> pair_edges(zones, std::vector<std::vector<int>>(zones));
  for (int i = 0; i < zones; ++i) {
    for (int j = 0; j < zones; ++j) {
      if (i == j) continue;
      for (int p1 = 0; p1 < static_cast<int>(m.zone_points[i].size()); ++p1) {
        for (int p2 = 0; p2 < static_cast<int>(m.zone_points[j].size()); ++p2) {
          const int id = static_cast<int>(m.edges.size());
          m.edges.push_back({i, j, p1, p2, distance(m.zone_points[i][p1], m.zone_points[j][p2])});
          out_of[i].push_back(id);
          into[j].push_back(id);
          out_point[i][p1].push_back(id);
          in_point[j][p2].push_back(id);
          pair_edges[i][j].push_back(id);
        }
      }
    }
  }

  auto ones = [](const std::vector<int>& ids, double c) {
    std::vector<Term> t;
    for (int id : ids) t.push_back({id, c});
    return t;
  };

  for (int i = 0; i < zones; ++i) {
    m.rows.push_back({"eq6_zone" + std::to_string(i), 6, ones(into[i], 1.0), RowSense::eq, 1.0});
  }
  for (int j = 0; j < zones; ++j) {
    m.rows.push_back({"eq7_zone" + std::to_string(j), 7, ones(out_of[j], 1.0), RowSense::eq, 1.0});
  }
  auto balance = [&](int z, int p) {
    auto t = ones(out_point[z][p], 1.0);
    for (int id : in_point[z][p]) t.push_back({id, -1.0});
    return t;
  };
  for (int i = 1; i < zones; ++i) {
    for (int p = 0; p < static_cast<int>(m.zone_points[i].size()); ++p) {
      m.rows.push_back({"eq8_zone" + std::to_string(i) + "_p" + std::to_string(p), 8, balance(i, p),
                        RowSense::eq, 0.0});
    }
  }
  m.rows.push_back({"eq9_start_p0", 9, balance(0, 0), RowSense::eq, 0.0});
  for (int i = 1; i < zones; ++i) {
    for (int j = 1; j < zones; ++j) {
      if (i == j) continue;
      std::vector<Term> t{{m.u_var(i), 1.0}, {m.u_var(j), -1.0}};
      for (int id : pair_edges[i][j]) t.push_back({id, m.big_n});
      m.rows.push_back({"eq10_mtz_" + std::to_string(i) + "_" + std::to_string(j), 10, std::move(t),
                        RowSense::le, m.big_n - 1.0});
    }
  }
  std::vector<Term> q_terms;
  for (int id = 0; id < m.binary_count(); ++id) {
    const EdgeVar& e = m.edges[id];
    if (e.from_zone == 0) continue;
    const double q = m.zone_quality[e.from_zone][e.from_point];
    if (q != 0.0) q_terms.push_back({id, q});
  }
  m.rows.push_back({"eq11_quality", 11, std::move(q_terms), RowSense::ge, q_star});
  return m;
}

void write_lp(const IlpModel& model, std::ostream& out) {
  out << "\\ Observation tour model: " << model.objects << " objects, " << model.zone_count()
      << " zones, " << model.binary_count() << " binaries\n";
  out << "Minimize\n obj: ";
  std::vector<Term> objective;
  for (int id = 0; id < model.binary_count(); ++id) objective.push_back({id, model.edges[id].cost});
  write_terms(out, model, objective);
  out << "\nSubject To\n";
  for (const Row& r : model.rows) {
    out << ' ' << r.name << ": ";
    write_terms(out, model, r.terms);
    switch (r.sense) {
      case RowSense::le: out << " <= "; break;
      case RowSense::ge: out << " >= "; break;
      case RowSense::eq: out << " = "; break;
    }
    out << format_number(r.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int z = 1; z < model.zone_count(); ++z) out << ' ' << model.variable_name(model.u_var(z)) << " >= 0\n";
  out << "Binary\n";
  for (int id = 0; id < model.binary_count(); ++id) out << ' ' << model.variable_name(id) << '\n';
  out << "End\n";
}

void write_lp(const IlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_lp(model, out);
  if (!out) throw IoError("failed writing " + path.string());
}

std::optional<EdgeName> parse_edge_name(std::string_view name) {
  if (name.size() < 2 || name.substr(0, 2) != "X_") return std::nullopt;
  int v[4];
  const char* p = name.data() + 2;
  const char* end = name.data() + name.size();
  for (int k = 0; k < 4; ++k) {
    auto res = std::from_chars(p, end, v[k]);
    if (res.ec != std::errc() || v[k] < 0) return std::nullopt;
    p = res.ptr;
    if (k < 3) {
      if (p == end || *p != '_') return std::nullopt;
      ++p;
    }
  }
  if (p != end) return std::nullopt;
  return EdgeName{v[0], v[1], v[2], v[3]};
}

Assignment read_assignment(std::istream& in) {
  Assignment a;
  std::string line;
  while (std::getline(in, line)) {
    for (char& c : line) {
      if (c == '=' || c == ':' || c == ',' || c == '\t') c = ' ';
    }
    std::istringstream ls(line);
    std::string name;
    double value = 0.0;
    if (!(ls >> name) || name[0] == '#' || name[0] == '\\') continue;
    if (!(ls >> value)) throw DomainError("assignment line without a value: " + line);
    a[name] = value;
  }
  return a;
}

Assignment encode_tour(const IlpModel& model, const std::vector<std::pair<int, int>>& stops) {
  Assignment a;
  for (int id = 0; id < model.binary_count(); ++id) a[model.variable_name(id)] = 0.0;
  std::pair<int, int> at{0, 0};
  auto set_edge = [&](std::pair<int, int> from, std::pair<int, int> to) {
    a["X_" + std::to_string(from.first) + "_" + std::to_string(to.first) + "_" +
      std::to_string(from.second) + "_" + std::to_string(to.second)] = 1.0;
  };
  for (std::size_t k = 0; k < stops.size(); ++k) {
    set_edge(at, stops[k]);
    a[model.variable_name(model.u_var(stops[k].first))] = static_cast<double>(k + 1);
    at = stops[k];
  }
  set_edge(at, {0, 0});
  return a;
}

ValidationReport validate_solution(const IlpModel& model, const Assignment& assignment,
                                   const Scenario& scenario) {
  ValidationReport rep;
  std::vector<double> x(model.variable_count(), 0.0);
  std::vector<char> u_given(model.zone_count(), 0);
  std::map<std::string, int> index;
  for (int v = 0; v < model.variable_count(); ++v) index[model.variable_name(v)] = v;

  for (const auto& [name, value] : assignment) {
    auto it = index.find(name);
    if (it == index.end()) {
      rep.violations.push_back("unknown variable " + name);
      continue;
    }
    x[it->second] = value;
    if (it->second >= model.binary_count()) u_given[it->second - model.binary_count() + 1] = 1;
  }
  for (int id = 0; id < model.binary_count(); ++id) {
    const double v = x[id];
    if (std::abs(v) > kIntTol && std::abs(v - 1.0) > kIntTol) {
      rep.violations.push_back("fractional binary " + model.variable_name(id) + " = " + format_number(v));
    }
  }
  if (!rep.violations.empty()) return rep;

  // Extract the successor structure.
  std::vector<std::vector<int>> chosen_out(model.zone_count());
  for (int id = 0; id < model.binary_count(); ++id) {
    if (x[id] > 0.5) {
      chosen_out[model.edges[id].from_zone].push_back(id);
      rep.objective += model.edges[id].cost;
    }
  }
  std::vector<char> visited(model.zone_count(), 0);
  int zone = 0;
  int point = 0;
  visited[0] = 1;
  while (chosen_out[zone].size() == 1) {
    const EdgeVar& e = model.edges[chosen_out[zone].front()];
    if (e.from_point != point) break;
    rep.length += distance(model.zone_points[zone][point], model.zone_points[e.to_zone][e.to_point]);
    zone = e.to_zone;
    point = e.to_point;
    if (zone == 0) break;
    if (visited[zone]) break;
    visited[zone] = 1;
    rep.tour.emplace_back(zone, point);
    rep.quality += quality(scenario.objects()[zone - 1], model.zone_points[zone][point], scenario.sensing());
  }
  const bool closed = zone == 0 && static_cast<int>(rep.tour.size()) == model.zone_count() - 1;

  // Without supplied u values, give the tour zones their positions.
  bool all_u = true;
  for (int z = 1; z < model.zone_count(); ++z) all_u = all_u && u_given[z];
  if (!all_u) {
    for (std::size_t k = 0; k < rep.tour.size(); ++k) x[model.u_var(rep.tour[k].first)] = static_cast<double>(k + 1);
  }

  for (const Row& r : model.rows) {
    double lhs = 0.0;
    for (const Term& t : r.terms) lhs += t.coeff * x[t.var];
    bool ok = true;
    switch (r.sense) {
      case RowSense::le: ok = lhs <= r.rhs + kIntTol; break;
      case RowSense::ge: ok = lhs >= r.rhs - kIntTol; break;
      case RowSense::eq: ok = std::abs(lhs - r.rhs) <= kIntTol; break;
    }
    if (!ok) rep.violations.push_back(r.name + ": lhs " + format_number(lhs) + " vs rhs " + format_number(r.rhs));
  }
  if (!closed && rep.violations.empty()) {
    rep.violations.push_back("eq10: selected edges do not form one tour through the start");
  } else if (!closed && !all_u) {
    rep.violations.push_back("eq10: subtour not reachable from the start");
  }
  rep.valid = rep.violations.empty();
  return rep;
}

}  // namespace obsplan
