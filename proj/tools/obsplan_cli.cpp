// obsplan command-line front end. Degrees at the boundary, radians inside.
// Exit codes: 0 ok, 1 domain error, 2 I/O error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "obsplan/harness.hpp"
#include "obsplan/ilp_export.hpp"
#include "obsplan/parallel.hpp"

using namespace obsplan;

namespace {

constexpr double kCheckTol = 1e-6;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void emit_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    save_json(j, path);
  }
}

// Recomputes a plan from geometry before it is written.
void revalidate(const Scenario& sc, const PlanResult& plan, double q_star) {
  std::vector<int> seen(sc.object_count(), 0);
  for (const auto& s : plan.stops) {
    for (int o : s.observes) {
      if (o < 0 || o >= sc.object_count()) throw std::logic_error("plan references an unknown object");
      if (!can_observe(sc.objects()[o], s.waypoint, sc.sensing()))
        throw std::logic_error("plan stop cannot observe object " + std::to_string(o));
      ++seen[o];
    }
  }
  for (int c : seen)
    if (c != 1) throw std::logic_error("plan does not observe every object exactly once");
  if (std::abs(tour_length(sc.start(), plan.stops) - plan.total_length) > kCheckTol)
    throw std::logic_error("plan length does not match its waypoints");
  if (recompute_quality(sc, plan.stops) < q_star - kCheckTol)
    throw std::logic_error("plan quality below the threshold");
}

std::vector<int> order_for(const Scenario& sc, OrderMethod m, std::uint64_t seed) {
  switch (m) {
    case OrderMethod::rs: return rs_order(sc, seed).order.sequence;
    case OrderMethod::npf: return npf_order(sc).order.sequence;
    case OrderMethod::gtsp: return gtsp_order(sc).order.sequence;
    case OrderMethod::tspo: return tspo_order(sc).sequence;
    case OrderMethod::lbtsp: return lbtsp_order(sc, build_cluster_graph(sc)).sequence;
    case OrderMethod::brute: break;
  }
  throw DomainError("brute has no single order; use the brute subcommand");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Observation tour planner"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  int gen_n = 5;
  double gen_map = 200.0, gen_eps = 0.5, gen_dmin = 2.0, gen_dmax = 10.0, gen_theta = 30.0, gen_frac = 0.5;
  std::uint64_t gen_seed = 1;
  std::vector<double> gen_start{0.0, 0.0};
  std::string gen_out;
  gen->add_option("--n", gen_n, "Object count")->check(CLI::Range(2, 1000));
  gen->add_option("--map", gen_map, "Map side in meters")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--epsilon", gen_eps);
  gen->add_option("--dmin", gen_dmin);
  gen->add_option("--dmax", gen_dmax);
  gen->add_option("--theta", gen_theta, "Half-angle in degrees");
  gen->add_option("--qfrac", gen_frac, "Default q* fraction stored in the instance");
  gen->add_option("--start", gen_start, "Start point x,y")->delimiter(',')->expected(2);
  gen->add_option("--out", gen_out, "Output JSON (stdout if omitted)");

  // shared instance input
  std::string in_path, out_path;
  auto add_in = [&](CLI::App* c) { c->add_option("--in", in_path, "Instance JSON")->required(); };

  auto* points = app.add_subcommand("points", "Write the observation points as CSV");
  add_in(points);
  points->add_option("--out", out_path);

  auto* plan = app.add_subcommand("plan", "Plan a tour with one ordering method");
  add_in(plan);
  std::string method = "gtsp";
  std::optional<double> qfrac;
  bool rounded = false;
  std::uint64_t rs_seed = 0;
  plan->add_option("--method", method, "rs|npf|gtsp|tspo|lbtsp");
  plan->add_option("--qstar", qfrac, "Quality fraction of n*q_max (default: the instance's)");
  auto* exact_flag = plan->add_flag("--exact", "Exact lengths (default)");
  plan->add_flag("--rounded", rounded, "Round stored lengths to the mesh pitch")->excludes(exact_flag);
  plan->add_option("--rs-seed", rs_seed, "Seed for the RS order");
  plan->add_option("--out", out_path);

  auto* brute = app.add_subcommand("brute", "Best plan over all visiting orders (n <= 8)");
  add_in(brute);
  brute->add_option("--qstar", qfrac);
  brute->add_option("--out", out_path);

  auto* bound = app.add_subcommand("bound", "Lower bound on the tour length");
  add_in(bound);
  bound->add_option("--out", out_path);

  auto* bench = app.add_subcommand("bench", "Run the benchmark sweep");
  std::vector<int> b_ns{3, 4, 5};
  std::vector<double> b_dmax{10.0}, b_q{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::string> b_methods{"rs", "npf", "gtsp", "tspo", "lbtsp", "brute"};
  int b_cases = 50;
  double b_map = 200.0, b_eps = 0.5, b_dmin = 2.0, b_theta = 30.0;
  std::uint64_t b_seed = 1;
  std::string b_summary;
  bool paper_counts = false;
  bench->add_option("--n", b_ns)->delimiter(',');
  bench->add_option("--cases", b_cases)->check(CLI::PositiveNumber);
  bench->add_option("--dmax", b_dmax)->delimiter(',');
  bench->add_option("--qstar", b_q)->delimiter(',');
  bench->add_option("--methods", b_methods)->delimiter(',');
  bench->add_option("--map", b_map);
  bench->add_option("--epsilon", b_eps);
  bench->add_option("--dmin", b_dmin);
  bench->add_option("--theta", b_theta);
  bench->add_option("--seed", b_seed);
  bench->add_option("--out", out_path, "Records CSV")->required();
  bench->add_option("--summary", b_summary, "Summary CSV");
  bench->add_flag("--paper-counts", paper_counts, "250 cases per n (200 for the d_max sweep)");

  auto* lp = app.add_subcommand("lp-export", "Write the ILP model in LP format");
  add_in(lp);
  lp->add_option("--qstar", qfrac);
  lp->add_option("--out", out_path)->required();

  auto* validate = app.add_subcommand("validate", "Check an ILP solution against the model");
  add_in(validate);
  std::string assignment_path;
  validate->add_option("--qstar", qfrac);
  validate->add_option("--solution", assignment_path, "Lines of 'name value'")->required();
  validate->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    auto load = [&] { return Scenario(load_instance(in_path)); };
    auto threshold = [&](const Scenario& sc) {
      return sc.q_star(qfrac ? *qfrac : sc.instance().q_star_fraction);
    };

    if (*gen) {
      SensingSpec s;
      s.d_min = gen_dmin;
      s.d_max = gen_dmax;
      s.theta = gen_theta * std::numbers::pi / 180.0;
      Instance inst = gen_instance(gen_n, gen_map, s, gen_eps, gen_seed, Point2(gen_start[0], gen_start[1]));
      inst.q_star_fraction = gen_frac;
      Scenario check(inst);  // rejects instances outside the quality band
      emit_json(instance_to_json(inst), gen_out);
    } else if (*points) {
      const Scenario sc = load();
      if (out_path.empty()) {
        write_points_csv(std::cout, sc.points());
      } else {
        auto out = open_out(out_path);
        write_points_csv(out, sc.points());
      }
    } else if (*plan) {
      const Scenario sc = load();
      const double q = threshold(sc);
      const OrderMethod m = parse_order_method(method);
      DpOptions opt;
      opt.mode = rounded ? LengthMode::rounded : LengthMode::exact;
      const auto result = dp_solve(sc, order_for(sc, m, rs_seed), q, opt);
      if (result) revalidate(sc, *result, q);
      emit_json(plan_to_json(to_string(m), result, q), out_path);
    } else if (*brute) {
      const Scenario sc = load();
      const double q = threshold(sc);
      const auto result = brute_force_plans(sc, std::vector<double>{q}, {}, default_workers()).front();
      if (result) revalidate(sc, *result, q);
      emit_json(plan_to_json("BRUTE", result, q), out_path);
    } else if (*bound) {
      const Scenario sc = load();
      emit_json({{"lower_bound_m", lower_bound(sc)}}, out_path);
    } else if (*bench) {
      BenchConfig cfg;
      cfg.ns = b_ns;
      cfg.d_maxes = b_dmax;
      cfg.cases = paper_counts ? (b_dmax.size() > 1 ? 200 : 250) : b_cases;
      cfg.map_size = b_map;
      cfg.epsilon = b_eps;
      cfg.sensing.d_min = b_dmin;
      cfg.sensing.theta = b_theta * std::numbers::pi / 180.0;
      cfg.base_seed = b_seed;
      cfg.case_config.q_star_fractions = b_q;
      cfg.case_config.methods.clear();
      for (const auto& t : b_methods) cfg.case_config.methods.push_back(parse_order_method(t));
      const auto records = run_benchmark(cfg, default_workers());
      auto out = open_out(out_path);
      write_records_csv(out, records);
      if (!b_summary.empty()) {
        auto sum = open_out(b_summary);
        write_summary_csv(sum, summarize(records));
      }
    } else if (*lp) {
      const Scenario sc = load();
      write_lp(build_model(sc, threshold(sc)), std::filesystem::path(out_path));
    } else if (*validate) {
      const Scenario sc = load();
      const IlpModel model = build_model(sc, threshold(sc));
      std::ifstream in(assignment_path);
      if (!in) throw IoError("cannot open " + assignment_path);
      const auto report = validate_solution(model, read_assignment(in), sc);
      nlohmann::json tour = nlohmann::json::array();
      for (auto [z, p] : report.tour) tour.push_back({z, p});
      emit_json({{"valid", report.valid},
                 {"violations", report.violations},
                 {"tour", tour},
                 {"objective", report.objective},
                 {"length_m", report.length},
                 {"quality", report.quality}},
                out_path);
      if (!report.valid) return 1;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
