#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "msc/approx.hpp"
#include "msc/exact.hpp"
#include "msc/hardness.hpp"
#include "msc/instances.hpp"
#include "msc/models.hpp"
#include "msc/onedim.hpp"

namespace msc::cli {

using nlohmann::json;

namespace {

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  template <typename T>
  T get(const std::string& key, T fallback) {
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    used_.insert(key);
    try {
      if constexpr (std::is_same_v<T, double>) {
        return parse_number(it->second);
      } else {
        size_t pos = 0;
        auto v = std::stoull(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return static_cast<T>(v);
      }
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, "bad value for parameter " + key + ": " + it->second);
    }
  }

  void finish(const std::string& algo) const {
    for (const auto& [k, v] : raw_) {
      if (!used_.count(k)) throw Error(ErrorKind::kInvalidArgument, "unknown parameter for " + algo + ": " + k);
    }
  }

 private:
  const std::map<std::string, std::string>& raw_;
  std::set<std::string> used_;
};

RunOutput from_heuristic(heuristics::Result r) {
  RunOutput out;
  out.schedule = std::move(r.schedule);
  out.extra["iterations"] = r.iterations;
  out.trace = std::move(r.trace);
  return out;
}

RunOutput from_exact(const exact::SolveResult& r) {
  RunOutput out;
  out.schedule = r.schedule;
  out.proven_optimal = r.proven_optimal;
  out.extra["nodes"] = r.nodes_explored;
  if (!r.proven_optimal) out.status = "budget";
  return out;
}

std::string slurp(const std::string& path) { return read_file(path); }

void emit_line(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump() << "\n";
    return;
  }
  std::ofstream f(path, std::ios::app);
  if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  f << j.dump() << "\n";
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kv) {
  std::map<std::string, std::string> out;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::kInvalidArgument, "--param expects key=value, got " + s);
    }
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

std::string join_params(const std::map<std::string, std::string>& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : ";") + k + "=" + v;
  return s;
}

json trace_json(const heuristics::TraceEntry& t) {
  return {{"iteration", t.iteration}, {"best", t.best}, {"current", t.current}, {"temperature", t.temperature}};
}

// ---------------------------------------------------------------- bench

struct Cell {
  std::string instance;
  const Instance* inst;
  std::string algo;
  std::map<std::string, std::string> params;
  Objective obj;
  std::uint64_t seed;
  // results
  std::string status;
  double value = 0.0;
  bool proven = false;
  double runtime = 0.0;
};

Instance bench_instance(const json& spec, const std::string& base_dir) {
  if (spec.contains("file")) {
    std::string path = spec.at("file").get<std::string>();
    if (!path.empty() && path[0] != '/') path = base_dir + path;
    return read_instance(read_file(path));
  }
  std::string gen = spec.value("generator", "random");
  int n = spec.value("n", 8);
  std::uint64_t seed = spec.value("seed", std::uint64_t{0});
  if (gen == "random") return gen_random({n, spec.value("p", 0.5), seed});
  if (gen == "oned") return gen_random_1d({n, spec.value("p", 0.5), seed});
  if (gen == "celestial") {
    return gen_celestial({n, spec.value("orbit_radius", 1.0), spec.value("obstacle_radius", 0.5), seed});
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown generator " + gen);
}

std::string csv_number(double x) { return format_number(x); }

// Ratios compare values at 1e-9 degree resolution, so equal optima reached by
// different schedules do not differ in the last bits.
double quantize(double x) { return std::round(x * 1e9) / 1e9; }

std::string bench(const json& suite, const std::string& base_dir, bool deterministic, int jobs) {
  std::vector<std::pair<std::string, Instance>> instances;
  int anon = 0;
  for (const auto& spec : suite.at("instances")) {
    std::string name = spec.value("name", "instance" + std::to_string(anon++));
    instances.emplace_back(name, bench_instance(spec, base_dir));
  }
  std::vector<Objective> objectives;
  for (const auto& o : suite.value("objectives", json::array({"te"}))) {
    objectives.push_back(parse_objective(o.get<std::string>()));
  }
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> algos;
  for (const auto& a : suite.at("algorithms")) {
    if (a.is_string()) {
      algos.push_back({a.get<std::string>(), {}});
      continue;
    }
    std::map<std::string, std::string> params;
    const json raw = a.value("params", json::object());
    for (const auto& [k, v] : raw.items()) {
      params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    algos.push_back({a.at("name").get<std::string>(), params});
  }
  Budget budget;
  budget.deterministic = deterministic;
  if (!deterministic) budget.seconds = suite.value("budget", 10.0);
  if (suite.contains("nodes")) budget.nodes = suite.at("nodes").get<std::uint64_t>();
  if (deterministic && !budget.nodes) budget.nodes = 1'000'000;
  std::uint64_t seed = suite.value("seed", std::uint64_t{1});

  std::vector<Cell> cells;
  for (const auto& [name, inst] : instances) {
    for (Objective obj : objectives) {
      for (const auto& [algo, params] : algos) cells.push_back({name, &inst, algo, params, obj, seed});
    }
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < cells.size(); i = next++) {
      Cell& c = cells[i];
      auto t0 = std::chrono::steady_clock::now();
      try {
        RunOutput r = run_algorithm(*c.inst, c.algo, c.obj, c.seed, budget, c.params);
        if (r.schedule) {
          c.value = evaluate(*c.inst, *r.schedule).value(c.obj);
          c.proven = r.proven_optimal;
          c.status = r.status;
        } else {
          c.status = r.status;
        }
      } catch (const Error& e) {
        c.status = std::string("error:") + to_string(e.kind());
      } catch (const std::exception&) {
        c.status = "error";
      }
      c.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  jobs = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::map<std::pair<std::string, Objective>, double> best;
  for (const auto& c : cells) {
    if (c.status != "ok" && c.status != "budget") continue;
    auto key = std::pair{c.instance, c.obj};
    auto it = best.find(key);
    if (it == best.end() || c.value < it->second) best[key] = c.value;
  }
  std::ostringstream csv;
  csv << "# msc-bench v1\n";
  csv << "instance,algorithm,objective,status,value,best_known,ratio,proven_optimal,runtime,seed,parameters\n";
  for (const auto& c : cells) {
    bool has = c.status == "ok" || c.status == "budget";
    auto it = best.find({c.instance, c.obj});
    std::string b = it == best.end() ? "" : csv_number(it->second);
    std::string ratio;
    if (has && it != best.end()) {
      double v = quantize(c.value), d = quantize(it->second);
      ratio = d == 0.0 ? (v == 0.0 ? "1" : "inf") : csv_number(v / d);
    }
    csv << c.instance << "," << c.algo << "," << to_string(c.obj) << "," << c.status << ","
        << (has ? csv_number(c.value) : "") << "," << b << "," << ratio << ","
        << (has ? (c.proven ? "true" : "false") : "") << ","
        << (deterministic ? "" : csv_number(c.runtime)) << "," << c.seed << "," << join_params(c.params)
        << "\n";
  }
  return csv.str();
}

}  // namespace

RunOutput run_algorithm(const Instance& inst, const std::string& algo, Objective obj, std::uint64_t seed,
                        const Budget& budget, const std::map<std::string, std::string>& raw) {
  Params p(raw);
  RunOutput out;
  const double seconds = budget.deterministic ? std::numeric_limits<double>::infinity() : budget.seconds;
  if (algo == "bf") {
    exact::BruteForceOptions opt;
    opt.max_edges = p.get<int>("max_edges", opt.max_edges);
    opt.max_seconds = seconds;
    if (budget.nodes) opt.max_sequences = *budget.nodes;
    p.finish(algo);
    out = from_exact(exact::brute_force(inst, obj, opt));
  } else if (algo == "bnb") {
    exact::BnbOptions opt;
    opt.max_seconds = seconds;
    if (budget.nodes) opt.max_nodes = *budget.nodes;
    opt.max_nodes = p.get<std::uint64_t>("max_nodes", opt.max_nodes);
    p.finish(algo);
    out = from_exact(exact::branch_and_bound(inst, obj, opt));
  } else if (algo == "lcover") {
    exact::LambdaCoverOptions opt;
    opt.max_conflicts = p.get<std::uint64_t>("max_conflicts", opt.max_conflicts);
    p.finish(algo);
    auto r = exact::lambda_cover_exists(inst, opt);
    out.extra["exists"] = r.exists;
    out.extra["conflicts"] = r.conflicts;
    if (r.exists) {
      out.schedule = r.schedule;
      out.proven_optimal = obj != Objective::kMakespan;
      json dirs = json::object();
      for (auto [v, rot] : r.assignment) dirs[std::to_string(v)] = rot == Rotation::kCW ? "cw" : "ccw";
      out.extra["directions"] = dirs;
    } else {
      out.status = "no-lambda-cover";
    }
  } else if (algo == "oned") {
    p.finish(algo);
    auto r = onedim::solve(inst);
    out.schedule = r.schedule;
    out.proven_optimal = obj != Objective::kMakespan;
    out.extra["k"] = r.classification.k();
  } else if (algo == "2apx") {
    p.finish(algo);
    out.schedule = approx::two_approx(inst, approx::bipartition(inst));
  } else if (algo == "logk") {
    p.finish(algo);
    out.schedule = approx::log_k_approx(inst, obj);
  } else if (algo == "apx") {
    p.finish(algo);
    out.schedule = approx::apx_general(inst, obj);
  } else if (algo == "greedy") {
    p.finish(algo);
    out = from_heuristic(heuristics::greedy(inst, obj, seed));
  } else if (algo == "ils") {
    heuristics::IlsOptions opt;
    opt.max_seconds = seconds;
    if (budget.nodes) opt.max_iterations = *budget.nodes;
    opt.max_iterations = p.get<std::uint64_t>("max_iterations", opt.max_iterations);
    p.finish(algo);
    out = from_heuristic(heuristics::ils(inst, obj, opt));
  } else if (algo == "sa") {
    heuristics::SaParams sp;
    sp.seed = seed;
    sp.max_seconds = seconds;
    if (budget.nodes) sp.max_steps = *budget.nodes;
    sp.initial_temperature = p.get<double>("initial_temperature", sp.initial_temperature);
    sp.cooling = p.get<double>("cooling", sp.cooling);
    sp.reheat_after = p.get<std::uint64_t>("reheat_after", sp.reheat_after);
    sp.reheat_factor = p.get<double>("reheat_factor", sp.reheat_factor);
    sp.max_steps = p.get<std::uint64_t>("max_steps", sp.max_steps);
    sp.chains = p.get<int>("chains", sp.chains);
    sp.trace_every = p.get<std::uint64_t>("trace_every", sp.trace_every);
    p.finish(algo);
    out = from_heuristic(heuristics::sa(inst, obj, sp));
  } else if (algo == "ga") {
    heuristics::GaParams gp;
    gp.seed = seed;
    gp.time_limit = seconds;
    gp.population = p.get<int>("population", gp.population);
    gp.elite_fraction = p.get<double>("elite_fraction", gp.elite_fraction);
    gp.mutation_fraction = p.get<double>("mutation_fraction", gp.mutation_fraction);
    gp.greedy_mutation_prob = p.get<double>("greedy_mutation_prob", gp.greedy_mutation_prob);
    gp.per_edge_mutation_prob = p.get<double>("per_edge_mutation_prob", gp.per_edge_mutation_prob);
    gp.max_generations = p.get<int>("max_generations", gp.max_generations);
    gp.stall_generations = p.get<int>("stall_generations", gp.stall_generations);
    p.finish(algo);
    out = from_heuristic(heuristics::ga(inst, obj, gp));
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown algorithm " + algo);
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum scan cover solver suite", "msc"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string gen_kind, gen_out;
  int gen_n = 10;
  double gen_p = 0.5, orbit = 1.0, obstacle = 0.5;
  std::uint64_t gen_seed = 0;
  gen->add_option("kind", gen_kind, "random | celestial | oned")->required()
      ->check(CLI::IsMember({"random", "celestial", "oned"}));
  gen->add_option("--n", gen_n, "Vertices")->check(CLI::NonNegativeNumber);
  gen->add_option("--p", gen_p, "Edge probability");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--orbit-radius", orbit);
  gen->add_option("--obstacle-radius", obstacle);
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  std::string in, algo, objective = "te", sched_out, stats, trace_out;
  std::uint64_t seed = 1;
  double budget_s = 60.0;
  std::optional<std::uint64_t> nodes;
  bool deterministic = false;
  std::vector<std::string> kv;
  solve->add_option("--in", in, "Instance file")->required();
  solve->add_option("--algo", algo, "bf|bnb|lcover|oned|2apx|logk|apx|greedy|ils|sa|ga")->required();
  solve->add_option("--objective", objective)->check(CLI::IsMember({"ms", "te", "be", "MS", "TE", "BE"}));
  solve->add_option("--seed", seed);
  solve->add_option("--budget", budget_s, "Wall-clock budget in seconds");
  solve->add_option("--nodes", nodes, "Node/step budget");
  solve->add_flag("--deterministic", deterministic, "Ignore wall-clock limits");
  solve->add_option("--param", kv, "Algorithm parameter key=value");
  solve->add_option("--out", sched_out, "Schedule file");
  solve->add_option("--stats", stats, "Append the JSON record here instead of stdout");
  solve->add_option("--trace", trace_out, "JSON-lines search trace");

  // eval
  auto* ev = app.add_subcommand("eval", "Validate and evaluate a schedule");
  std::string ev_in, ev_sched;
  ev->add_option("--in", ev_in)->required();
  ev->add_option("--schedule", ev_sched)->required();

  // bench
  auto* bn = app.add_subcommand("bench", "Run a benchmark suite");
  std::string suite_path, csv_out;
  int jobs = 1;
  bool bn_det = false;
  bn->add_option("--suite", suite_path, "Suite JSON")->required();
  bn->add_option("--out", csv_out, "CSV file (default stdout)");
  bn->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  bn->add_flag("--deterministic", bn_det);

  // reduce
  auto* rd = app.add_subcommand("reduce", "Build the reduction graph of an MNAE3SAT formula");
  std::string rd_in, rd_out;
  bool certify = false;
  double min_angle = 10.0;
  rd->add_option("--in", rd_in)->required();
  rd->add_option("--out", rd_out)->required();
  rd->add_flag("--certify", certify, "Decide the Lambda-cover of the whole graph and compare with NAE brute force");
  rd->add_option("--min-angle", min_angle);

  // emit-model
  auto* em = app.add_subcommand("emit-model", "Write a MIP/CP model");
  std::string em_in, em_out, formulation, em_obj = "te";
  bool pure = false;
  em->add_option("--in", em_in)->required();
  em->add_option("--formulation", formulation, "mip1|mip2|mip3|cp1|cp2")->required();
  em->add_option("--objective", em_obj);
  em->add_option("--out", em_out);
  em->add_flag("--pure-lp", pure, "Reject models that need sidecar constraints");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      Instance inst = gen_kind == "random"      ? gen_random({gen_n, gen_p, gen_seed})
                      : gen_kind == "oned"      ? gen_random_1d({gen_n, gen_p, gen_seed})
                                                : gen_celestial({gen_n, orbit, obstacle, gen_seed});
      std::string text = write_instance(inst);
      if (gen_out.empty()) {
        out << text;
      } else {
        write_file(gen_out, text);
      }
      return 0;
    }
    if (*solve) {
      Instance inst = read_instance(slurp(in));
      Objective obj = parse_objective(objective);
      auto params = parse_params(kv);
      Budget b{budget_s, nodes, deterministic};
      auto t0 = std::chrono::steady_clock::now();
      RunOutput r = run_algorithm(inst, algo, obj, seed, b, params);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      json rec = {{"instance", inst.name().empty() ? in : inst.name()},
                  {"algorithm", algo},
                  {"objective", to_string(obj)},
                  {"status", r.status},
                  {"proven_optimal", r.proven_optimal},
                  {"runtime", deterministic ? 0.0 : secs},
                  {"seed", seed},
                  {"parameters", params}};
      if (r.schedule) {
        Evaluation e = evaluate(inst, *r.schedule);
        rec["value"] = e.value(obj);
        rec["makespan"] = e.makespan;
        rec["total_energy"] = e.total_energy;
        rec["bottleneck_energy"] = e.bottleneck_energy;
        if (!sched_out.empty()) write_file(sched_out, write_schedule(inst, *r.schedule));
      } else {
        rec["value"] = nullptr;
      }
      rec.update(r.extra);
      emit_line(rec, stats, out);
      if (!trace_out.empty()) {
        std::ofstream f(trace_out);
        for (const auto& t : r.trace) f << trace_json(t).dump() << "\n";
      }
      return 0;
    }
    if (*ev) {
      Instance inst = read_instance(slurp(ev_in));
      ScanCover sc = read_schedule(slurp(ev_sched), inst);
      auto bad = validate(inst, sc);
      json rec = {{"valid", bad.empty()}};
      if (bad.empty()) {
        Evaluation e = evaluate(inst, sc);
        rec["makespan"] = e.makespan;
        rec["total_energy"] = e.total_energy;
        rec["bottleneck_energy"] = e.bottleneck_energy;
      } else {
        json list = json::array();
        for (const auto& v : bad) {
          const Edge& a = inst.edge(v.e);
          const Edge& c = inst.edge(v.f);
          list.push_back({{"e", {a.u, a.v}}, {"f", {c.u, c.v}}, {"deficit", v.deficit}});
        }
        rec["violations"] = list;
      }
      out << rec.dump() << "\n";
      return bad.empty() ? 0 : 1;
    }
    if (*bn) {
      json suite = json::parse(slurp(suite_path));
      auto slash = suite_path.find_last_of('/');
      std::string base = slash == std::string::npos ? "" : suite_path.substr(0, slash + 1);
      std::string csv = bench(suite, base, bn_det, suite.value("jobs", jobs));
      if (csv_out.empty()) {
        out << csv;
      } else {
        write_file(csv_out, csv);
      }
      return 0;
    }
    if (*rd) {
      auto sat = hardness::parse_mnae3sat(slurp(rd_in));
      auto t0 = std::chrono::steady_clock::now();
      auto g = hardness::reduce(sat, {min_angle});
      write_file(rd_out, write_instance(g.instance));
      int aux = static_cast<int>(std::count(g.auxiliary.begin(), g.auxiliary.end(), true));
      json rec = {{"vertices", g.instance.num_vertices()},
                  {"edges", g.instance.num_edges()},
                  {"padding_vertices", aux},
                  {"fragments", g.fragments},
                  {"theta_max", g.theta_max},
                  {"theta_min", g.theta_min},
                  {"gap_constant", hardness::gap_constant(g.theta_max, g.theta_min)},
                  {"connectors", g.connectors}};
      int code = 0;
      if (certify) {
        auto r = exact::lambda_cover_exists(g.instance);
        bool sat_ok = hardness::nae_brute_force(sat).has_value();
        rec["lambda_cover"] = r.exists;
        rec["nae_satisfiable"] = sat_ok;
        if (r.exists) rec["assignment"] = hardness::read_assignment(g, r.assignment, sat.num_vars);
        if (r.exists != sat_ok) {
          err << "reduction disagrees with brute force\n";
          code = 1;
        }
      }
      rec["runtime"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out << rec.dump() << "\n";
      return code;
    }
    if (*em) {
      Instance inst = read_instance(slurp(em_in));
      auto model = models::build(formulation, inst, parse_objective(em_obj));
      std::string text = models::emit(model, pure ? models::Format::kPureLp : models::Format::kLp);
      if (em_out.empty()) {
        out << text;
      } else {
        write_file(em_out, text);
      }
      auto c = models::summarize(model);
      err << json{{"variables", c.variables}, {"constraints", c.constraints}, {"lazy", c.lazy},
                  {"conditional", c.conditional}}
                 .dump()
          << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::kInvalidArgument ? 2 : 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace msc::cli
