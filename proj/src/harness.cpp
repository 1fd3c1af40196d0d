#include "obsplan/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <tuple>

#include "obsplan/parallel.hpp"

namespace obsplan {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-9;

double deg(double rad) { return rad * 180.0 / std::numbers::pi; }
double rad(double deg) { return deg * std::numbers::pi / 180.0; }

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

ExperimentRecord base_record(const Scenario& sc, std::string method, double frac) {
  ExperimentRecord r;
  r.seed = sc.instance().seed;
  r.n = sc.object_count();
  r.d_max = sc.sensing().d_max;
  r.epsilon = sc.instance().epsilon;
  r.method = std::move(method);
  r.q_star_frac = frac;
  r.ratio_lb = kNaN;
  r.ratio_brute = kNaN;
  return r;
}

void fill_plan(ExperimentRecord& r, const std::optional<PlanResult>& plan) {
  r.feasible = plan.has_value();
  r.length = plan ? plan->total_length : kNaN;
  r.quality = plan ? plan->total_quality : kNaN;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

Instance gen_instance(int n, double map_size, const SensingSpec& sensing, double epsilon,
                      std::uint64_t seed, const Point2& start) {
  if (n < 2) throw DomainError("gen_instance: n must be >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, map_size);
  std::uniform_real_distribution<double> facing(0.0, 2.0 * std::numbers::pi);
  Instance inst;
  inst.map_size = map_size;
  inst.sensing = sensing;
  inst.epsilon = epsilon;
  inst.seed = seed;
  inst.start = start;
  for (int i = 0; i < n; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    inst.objects.push_back(make_object(Point2(x, y), facing(rng)));
  }
  return inst;
}

std::string initial_path_tag(OrderMethod m) { return std::string(to_string(m)) + "-init"; }

std::vector<ExperimentRecord> run_case(const Instance& instance, const CaseConfig& config) {
  const Scenario sc(instance);
  const double lb = lower_bound(sc);
  const auto& fracs = config.q_star_fractions;
  std::vector<double> q_stars;
  for (double f : fracs) q_stars.push_back(sc.q_star(f));

  std::vector<ExperimentRecord> out;
  std::optional<ClusterGraph> cluster;

  auto emit_dp = [&](OrderMethod m, const std::vector<int>& order) {
    const auto t0 = std::chrono::steady_clock::now();
    const DpTable table = dp_build(sc, order, config.dp);
    const double build_ms = elapsed_ms(t0);
    for (std::size_t q = 0; q < fracs.size(); ++q) {
      const auto t1 = std::chrono::steady_clock::now();
      auto plan = dp_close(sc, table, q_stars[q]);
      ExperimentRecord r = base_record(sc, std::string(to_string(m)), fracs[q]);
      fill_plan(r, plan);
      r.dp_ms = build_ms + elapsed_ms(t1);
      out.push_back(std::move(r));
    }
  };
  auto emit_path = [&](std::string tag, const std::vector<Stop>& stops) {
    const double len = tour_length(sc.start(), stops);
    const double qual = recompute_quality(sc, stops);
    for (std::size_t q = 0; q < fracs.size(); ++q) {
      ExperimentRecord r = base_record(sc, tag, fracs[q]);
      r.feasible = qual >= q_stars[q] - kFeasTol;
      r.length = len;
      r.quality = qual;
      out.push_back(std::move(r));
    }
  };

  for (OrderMethod m : config.methods) {
    switch (m) {
      case OrderMethod::rs:
      case OrderMethod::npf:
      case OrderMethod::gtsp: {
        const SeededOrder so = m == OrderMethod::rs    ? rs_order(sc, instance.seed ^ 0x9e3779b97f4a7c15ULL)
                               : m == OrderMethod::npf ? npf_order(sc)
                                                       : gtsp_order(sc);
        emit_dp(m, so.order.sequence);
        if (config.initial_paths) emit_path(initial_path_tag(m), so.initial_path);
        break;
      }
      case OrderMethod::tspo:
        emit_dp(m, tspo_order(sc).sequence);
        break;
      case OrderMethod::lbtsp:
        if (!cluster) cluster = build_cluster_graph(sc);
        emit_dp(m, lbtsp_order(sc, *cluster).sequence);
        break;
      case OrderMethod::brute: {
        if (sc.object_count() > kMaxBruteObjects) break;
        const auto t0 = std::chrono::steady_clock::now();
        const auto plans = brute_force_plans(sc, q_stars, config.dp, config.workers);
        const double ms = elapsed_ms(t0);
        for (std::size_t q = 0; q < fracs.size(); ++q) {
          ExperimentRecord r = base_record(sc, "BRUTE", fracs[q]);
          fill_plan(r, plans[q]);
          r.dp_ms = ms;
          out.push_back(std::move(r));
        }
        break;
      }
    }
  }

  if (config.max_quality_path) {
    std::vector<Point2> vertices{sc.start()};
    std::vector<Stop> stops;
    for (int i = 0; i < sc.object_count(); ++i) {
      const auto own = sc.points_of(i);
      auto best = std::max_element(own.begin(), own.end(), [](const auto& a, const auto& b) {
        return a.own_quality < b.own_quality;
      });
      vertices.push_back(best->position);
      stops.push_back(Stop{best->position, {i}});
    }
    const auto tour = tsp_tour(euclidean_graph(vertices), 0);
    std::vector<Stop> ordered;
    for (std::size_t k = 1; k < tour.size(); ++k) ordered.push_back(stops[tour[k] - 1]);
    emit_path("MaxQ", ordered);
  }

  // Ratios against the lower bound and, where present, the brute-force optimum.
  std::map<double, const ExperimentRecord*> brute;
  for (const auto& r : out) {
    if (r.method == "BRUTE" && r.feasible) brute[r.q_star_frac] = &r;
  }
  for (auto& r : out) {
    r.lb = lb;
    if (r.feasible && lb > 0.0) r.ratio_lb = r.length / lb;
    auto it = brute.find(r.q_star_frac);
    if (it != brute.end()) r.ratio_brute = r.feasible ? r.length / it->second->length : kInf;
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  using Key = std::tuple<int, double, std::string, double>;
  std::map<Key, std::vector<const ExperimentRecord*>> groups;
  std::map<std::tuple<std::uint64_t, int, double, std::string, double>, const ExperimentRecord*> by_case;
  for (const auto& r : records) {
    groups[{r.n, r.d_max, r.method, r.q_star_frac}].push_back(&r);
    by_case[{r.seed, r.n, r.d_max, r.method, r.q_star_frac}] = &r;
  }

  auto mean = [](const std::vector<double>& v) {
    if (v.empty()) return kNaN;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };

  std::vector<SummaryRow> rows;
  for (const auto& [key, recs] : groups) {
    SummaryRow row;
    std::tie(row.n, row.d_max, row.method, row.q_star_frac) = key;
    row.count = static_cast<int>(recs.size());
    std::vector<double> rb, rl, red, len, ms;
    const bool seeded = row.method.size() > 5 && row.method.ends_with("-init");
    for (const auto* r : recs) {
      row.feasible += r->feasible;
      if (!std::isnan(r->ratio_brute)) rb.push_back(r->ratio_brute);
      if (!std::isnan(r->ratio_lb)) rl.push_back(r->ratio_lb);
      if (r->feasible) len.push_back(r->length);
      ms.push_back(r->dp_ms);
      if (seeded && r->feasible) {
        const std::string base = row.method.substr(0, row.method.size() - 5);
        auto it = by_case.find({r->seed, r->n, r->d_max, base, r->q_star_frac});
        if (it != by_case.end() && it->second->feasible && r->length > 0.0) {
          red.push_back(100.0 * (r->length - it->second->length) / r->length);
        }
      }
    }
    row.satisfaction_pct = 100.0 * row.feasible / row.count;
    row.mean_ratio_brute = mean(rb);
    row.median_ratio_brute = median(rb);
    row.mean_ratio_lb = mean(rl);
    row.median_ratio_lb = median(rl);
    row.mean_reduction_pct = mean(red);
    row.mean_length = mean(len);
    row.mean_dp_ms = mean(ms);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t case_seed(std::uint64_t base, int n, int index) {
  return base * 1000003ULL + static_cast<std::uint64_t>(n) * 10007ULL + static_cast<std::uint64_t>(index);
}

std::vector<ExperimentRecord> run_benchmark(const BenchConfig& config, int workers) {
  struct Job {
    int n;
    int index;
    double d_max;
  };
  std::vector<Job> jobs;
  for (int n : config.ns) {
    for (int c = 0; c < config.cases; ++c) {
      for (double d : config.d_maxes) jobs.push_back({n, c, d});
    }
  }
  std::vector<std::vector<ExperimentRecord>> results(jobs.size());
  CaseConfig cc = config.case_config;
  cc.workers = 1;
  parallel_chunks(jobs.size(), workers, [&](int, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      SensingSpec s = config.sensing;
      s.d_max = jobs[k].d_max;
      const Instance inst = gen_instance(jobs[k].n, config.map_size, s, config.epsilon,
                                         case_seed(config.base_seed, jobs[k].n, jobs[k].index), config.start);
      results[k] = run_case(inst, cc);
    }
  });
  std::vector<ExperimentRecord> all;
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
  return all;
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& o : inst.objects) {
    objects.push_back({{"x", o.position.x()}, {"y", o.position.y()}, {"facing_deg", deg(o.facing)},
                       {"weight", o.weight}});
  }
  return {{"map_size", inst.map_size},
          {"start", {inst.start.x(), inst.start.y()}},
          {"epsilon", inst.epsilon},
          {"sensing",
           {{"d_min", inst.sensing.d_min},
            {"d_max", inst.sensing.d_max},
            {"theta_deg", deg(inst.sensing.theta)},
            {"a", inst.sensing.a},
            {"b", inst.sensing.b}}},
          {"objects", objects},
          {"seed", inst.seed},
          {"q_star_fraction", inst.q_star_fraction}};
}

Instance instance_from_json(const nlohmann::json& j) {
  try {
    Instance inst;
    inst.map_size = j.at("map_size").get<double>();
    const auto& st = j.at("start");
    inst.start = Point2(st.at(0).get<double>(), st.at(1).get<double>());
    inst.epsilon = j.at("epsilon").get<double>();
    const auto& s = j.at("sensing");
    inst.sensing.d_min = s.at("d_min").get<double>();
    inst.sensing.d_max = s.at("d_max").get<double>();
    inst.sensing.theta = rad(s.at("theta_deg").get<double>());
    inst.sensing.a = s.value("a", 1.0);
    inst.sensing.b = s.value("b", 0.0);
    for (const auto& o : j.at("objects")) {
      inst.objects.push_back(make_object(Point2(o.at("x").get<double>(), o.at("y").get<double>()),
                                         rad(o.at("facing_deg").get<double>()), o.value("weight", 1.0)));
    }
    inst.seed = j.value("seed", std::uint64_t{0});
    inst.q_star_fraction = j.value("q_star_fraction", 0.5);
    inst.validate();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed instance JSON: ") + e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("cannot parse " + path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_json(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

nlohmann::json plan_to_json(std::string_view method, const std::optional<PlanResult>& plan, double q_star) {
  nlohmann::json j;
  j["method"] = method;
  j["q_star"] = q_star;
  j["feasible"] = plan.has_value();
  nlohmann::json stops = nlohmann::json::array();
  if (plan) {
    j["order"] = plan->order_used;
    for (const auto& s : plan->stops) {
      stops.push_back({{"x", s.waypoint.x()}, {"y", s.waypoint.y()}, {"observes", s.observes}});
    }
    j["total_length_m"] = plan->total_length;
    j["total_quality"] = plan->total_quality;
  } else {
    j["order"] = nlohmann::json::array();
    j["total_length_m"] = nullptr;
    j["total_quality"] = nullptr;
  }
  j["stops"] = stops;
  return j;
}

void write_points_csv(std::ostream& out, std::span<const ObservationPoint> points) {
  out << "object,ring,angle,x,y,own_quality\n";
  for (const auto& p : points) {
    out << p.object_index << ',' << p.ring_index << ',' << p.angle_index << ',' << csv_number(p.position.x())
        << ',' << csv_number(p.position.y()) << ',' << csv_number(p.own_quality) << '\n';
  }
}

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "seed,n,d_max,epsilon,method,q_star_frac,length_m,quality,lb_m,ratio_lb,ratio_brute,feasible,dp_ms\n";
  for (const auto& r : records) {
    out << r.seed << ',' << r.n << ',' << csv_number(r.d_max) << ',' << csv_number(r.epsilon) << ','
        << r.method << ',' << csv_number(r.q_star_frac) << ',' << csv_number(r.length) << ','
        << csv_number(r.quality) << ',' << csv_number(r.lb) << ',' << csv_number(r.ratio_lb) << ','
        << csv_number(r.ratio_brute) << ',' << (r.feasible ? 1 : 0) << ',' << csv_number(r.dp_ms) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "n,d_max,method,q_star_frac,count,feasible,satisfaction_pct,mean_ratio_brute,median_ratio_brute,"
         "mean_ratio_lb,median_ratio_lb,mean_reduction_pct,mean_length_m,mean_dp_ms\n";
  for (const auto& r : rows) {
    out << r.n << ',' << csv_number(r.d_max) << ',' << r.method << ',' << csv_number(r.q_star_frac) << ','
        << r.count << ',' << r.feasible << ',' << csv_number(r.satisfaction_pct) << ','
        << csv_number(r.mean_ratio_brute) << ',' << csv_number(r.median_ratio_brute) << ','
        << csv_number(r.mean_ratio_lb) << ',' << csv_number(r.median_ratio_lb) << ','
        << csv_number(r.mean_reduction_pct) << ',' << csv_number(r.mean_length) << ','
        << csv_number(r.mean_dp_ms) << '\n';
  }
}

}  // namespace obsplan
