#pragma once

// Command-line front end. run() returns 0 on success, 1 when a schedule or
// model point is infeasible, and 2 on usage or input errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dsts/dsts.hpp"

namespace dsts::cli {

struct RunRecord {
  std::string instance;
  std::string method;
  std::uint64_t seed = 0;
  int rep = 0;
  Cost cost = 0;
  int served = 0;
  int total = 0;
  long iterations = 0;
  double ms = 0.0;

  [[nodiscard]] double ratio() const { return total == 0 ? 0.0 : static_cast<double>(served) / total; }
};

inline std::string fixed(double v, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

inline const char* kCsvHeader = "instance,method,seed,rep,cost,served,total,ratio,iters,ms\n";

inline std::string csv_row(const RunRecord& r) {
  return r.instance + ',' + r.method + ',' + std::to_string(r.seed) + ',' + std::to_string(r.rep) + ',' +
         std::to_string(r.cost) + ',' + std::to_string(r.served) + ',' + std::to_string(r.total) + ',' +
         fixed(r.ratio(), 4) + ',' + std::to_string(r.iterations) + ',' + fixed(r.ms, 3) + '\n';
}

inline std::string served_line(const Schedule& s, const Instance& inst) {
  const int served = s.served_count();
  return "served " + std::to_string(served) + "/" + std::to_string(inst.size()) + " ratio " +
         fixed(inst.size() ? static_cast<double>(served) / inst.size() : 0.0, 4) + "\n";
}

/// Thrown for bad input that CLI11 cannot detect; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BenchInstance {
  std::string path;  // empty for generated instances
  GenConfig gen;
};

struct BenchConfig {
  std::vector<BenchInstance> instances;
  std::vector<std::string> methods{"vns"};
  std::uint64_t seed = 1;
  int repetitions = 5;
  int workers = 1;
  VnsConfig vns;
};

inline BenchConfig parse_bench_config(const std::string& text, const std::filesystem::path& base) {
  BenchConfig cfg;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("bench config: ") + e.what());
  }
  try {
    for (const auto& p : j.value("instances", nlohmann::json::array()))
      cfg.instances.push_back({(base / p.get<std::string>()).string(), {}});
    for (const auto& g : j.value("generate", nlohmann::json::array())) {
      BenchInstance bi;
      bi.gen.seed = g.value("seed", std::uint64_t{0});
      bi.gen.docks = g.value("docks", 20);
      bi.gen.trailers = g.value("trailers", 60);
      bi.gen.tf = g.value("tf", 16);
      bi.gen.strict = !g.value("relaxed", false);
      cfg.instances.push_back(bi);
    }
    if (j.contains("methods")) cfg.methods = j["methods"].get<std::vector<std::string>>();
    cfg.seed = j.value("seed", cfg.seed);
    cfg.repetitions = j.value("repetitions", cfg.repetitions);
    cfg.workers = j.value("workers", cfg.workers);
    if (j.contains("vns")) {
      const auto& v = j["vns"];
      cfg.vns.alpha = v.value("alpha", cfg.vns.alpha);
      cfg.vns.beta = v.value("beta", cfg.vns.beta);
      cfg.vns.gamma = v.value("gamma", cfg.vns.gamma);
      cfg.vns.epsilon = v.value("epsilon", cfg.vns.epsilon);
      cfg.vns.max_iters = v.value("max_iters", cfg.vns.max_iters);
      if (v.contains("nmax")) cfg.vns.n_max_noimp = v["nmax"].get<long>();
      if (v.contains("metric")) cfg.vns.metric = parse_metric(v["metric"].get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bench config: ") + e.what());
  }
  if (cfg.instances.empty()) throw UsageError("bench config lists no instances");
  if (cfg.repetitions < 1 || cfg.workers < 1) throw UsageError("repetitions and workers must be >= 1");
  for (const std::string& m : cfg.methods)
    if (m != "vns") parse_method(m);
  return cfg;
}

inline RunRecord bench_one(const Instance& inst, const std::string& method, const BenchConfig& cfg, int rep,
                           bool timing) {
  RunRecord r;
  r.instance = inst.name;
  r.method = method;
  r.seed = cfg.seed + static_cast<std::uint64_t>(rep);
  r.rep = rep;
  r.total = inst.size();
  const auto t0 = std::chrono::steady_clock::now();
  Schedule s;
  if (method == "vns") {
    VnsConfig vc = cfg.vns;
    vc.seed = r.seed;
    auto res = vns_solve(inst, construct(ConstructMethod::MinArrivalVertical, inst), vc);
    s = std::move(res.best);
    r.iterations = res.stats.iterations;
  } else {
    s = construct(parse_method(method), inst);
  }
  r.cost = s.cost;
  r.served = s.served_count();
  if (timing) r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Rows ordered by (instance, method, repetition) regardless of worker count.
inline std::string run_bench(const BenchConfig& cfg, bool timing) {
  std::vector<Instance> instances;
  for (const BenchInstance& bi : cfg.instances) instances.push_back(bi.path.empty() ? generate(bi.gen) : load_instance(bi.path));

  struct Job {
    std::size_t inst;
    std::size_t method;
    int rep;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t m = 0; m < cfg.methods.size(); ++m)
      for (int rep = 0; rep < cfg.repetitions; ++rep) jobs.push_back({i, m, rep});

  std::vector<RunRecord> rows(jobs.size());
  std::size_t next = 0;
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      std::size_t k = 0;
      {
        std::lock_guard lock(mu);
        if (next >= jobs.size() || failure) return;
        k = next++;
      }
      try {
        const Job& job = jobs[k];
        rows[k] = bench_one(instances[job.inst], cfg.methods[job.method], cfg, job.rep, timing);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n_workers = std::min<int>(cfg.workers, static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::string out = kCsvHeader;
  for (const RunRecord& r : rows) out += csv_row(r);
  return out;
}

namespace detail {

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    ::dsts::detail::write_file(path, text);
}

inline std::vector<milp::CutFamily> parse_cuts(const std::string& list) {
  std::vector<milp::CutFamily> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(milp::parse_family(item));
  return out;
}

inline void print_violations(const std::vector<Violation>& v, std::ostream& out) {
  for (const Violation& x : v)
    out << "violation " << rule_name(x.rule) << " trailer=" << x.trailer << " dock=" << x.dock << ": " << x.detail
        << '\n';
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Dock scheduling and truck sequencing toolkit", "dsts"};
  app.require_subcommand(1);

  // gen
  GenConfig gen;
  bool relaxed = false;
  std::string gen_out;
  auto* c_gen = app.add_subcommand("gen", "Generate a random instance");
  c_gen->add_option("--seed", gen.seed)->required();
  c_gen->add_option("--docks", gen.docks)->required();
  c_gen->add_option("--trailers", gen.trailers)->required();
  c_gen->add_option("--tf", gen.tf, "Shift length in periods")->capture_default_str();
  c_gen->add_flag("--relaxed", relaxed, "Allow sizes outside the published ranges");
  c_gen->add_option("-o,--output", gen_out);

  // construct
  std::string in_path;
  std::string method = "MinArrivalVertical";
  std::string sched_out;
  auto* c_con = app.add_subcommand("construct", "Build an initial schedule");
  c_con->add_option("-i,--input", in_path)->required();
  c_con->add_option("--method", method)
      ->check(CLI::IsMember({"ArrivalVertical", "ArrivalHorizontal", "MinArrivalVertical"}));
  c_con->add_option("-o,--output", sched_out);

  // solve
  VnsConfig vc;
  std::string metric = "d1";
  long nmax = 0;
  std::string stats_path;
  auto* c_solve = app.add_subcommand("solve", "Run the adaptive metaheuristic");
  c_solve->add_option("-i,--input", in_path)->required();
  c_solve->add_option("--seed", vc.seed);
  c_solve->add_option("--alpha", vc.alpha);
  c_solve->add_option("--beta", vc.beta);
  c_solve->add_option("--gamma", vc.gamma);
  c_solve->add_option("--epsilon", vc.epsilon);
  c_solve->add_option("--nmax", nmax, "Non-improvement cap (default |J|*|D|+1)");
  c_solve->add_option("--max-iters", vc.max_iters);
  c_solve->add_option("--metric", metric)->check(CLI::IsMember({"d1", "d2", "dinf", "dn"}));
  c_solve->add_option("--initial", method)
      ->check(CLI::IsMember({"ArrivalVertical", "ArrivalHorizontal", "MinArrivalVertical"}));
  c_solve->add_option("--stats", stats_path, "Per-iteration CSV");
  c_solve->add_option("-o,--output", sched_out);

  // exact
  ExactLimits lim;
  auto* c_exact = app.add_subcommand("exact", "Brute-force optimum for tiny instances");
  c_exact->add_option("-i,--input", in_path)->required();
  c_exact->add_option("--max-trailers", lim.max_trailers);
  c_exact->add_option("--max-docks", lim.max_docks);
  c_exact->add_option("--timeout", lim.timeout_s, "Seconds");
  c_exact->add_option("-o,--output", sched_out);

  // export-model
  std::string formulation;
  bool literal = false;
  bool preprocess = false;
  bool symmetry = false;
  bool tight = false;
  std::string cuts;
  std::string columns_path;
  std::string duals_path;
  std::string lp_out;
  auto* c_exp = app.add_subcommand("export-model", "Write an LP file");
  c_exp->add_option("-i,--input", in_path)->required();
  c_exp->add_option("--formulation", formulation)
      ->required()
      ->check(CLI::IsMember({"bigm", "arctime", "rmp", "pricing"}));
  c_exp->add_flag("--literal", literal, "bigm: omit due-date rows");
  c_exp->add_flag("--preprocess", preprocess, "arctime: drop eliminated variables");
  c_exp->add_flag("--symmetry", symmetry, "arctime/pricing: add symmetry rows");
  c_exp->add_option("--cuts", cuts, "Comma-separated families");
  c_exp->add_flag("--tight-dummy-degree", tight, "pricing: dummy degree <= 1 per dock");
  c_exp->add_option("--columns", columns_path, "rmp: column file (default: warm start)");
  c_exp->add_option("--duals", duals_path, "pricing: dual values file (default: zero)");
  c_exp->add_option("-o,--output", lp_out);

  // check
  std::string schedule_path;
  std::string against;
  auto* c_check = app.add_subcommand("check", "Validate a schedule, optionally against a formulation");
  c_check->add_option("-i,--input", in_path)->required();
  c_check->add_option("--schedule", schedule_path)->required();
  c_check->add_option("--against", against)->check(CLI::IsMember({"bigm", "bigm-literal", "arctime"}));
  c_check->add_flag("--preprocess", preprocess);
  c_check->add_flag("--symmetry", symmetry);
  c_check->add_option("--cuts", cuts);

  // bench
  std::string config_path;
  std::string csv_out;
  bool no_timing = false;
  auto* c_bench = app.add_subcommand("bench", "Run repeated solves over an instance corpus");
  c_bench->add_option("--config", config_path)->required();
  c_bench->add_option("-o,--output", csv_out);
  c_bench->add_flag("--no-timing", no_timing, "Write ms=0 for byte-stable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_gen) {
      gen.strict = !relaxed;
      detail::emit(gen_out, write_instance(generate(gen)), out);
      return 0;
    }
    if (*c_bench) {
      const std::filesystem::path base = std::filesystem::path(config_path).parent_path();
      const BenchConfig cfg = parse_bench_config(::dsts::detail::read_file(config_path), base);
      detail::emit(csv_out, run_bench(cfg, !no_timing), out);
      return 0;
    }

    const Instance inst = load_instance(in_path);
    if (*c_con) {
      const Schedule s = construct(parse_method(method), inst);
      detail::emit(sched_out, write_schedule(s), out);
      out << "cost " << s.cost << '\n' << served_line(s, inst);
      return 0;
    }
    if (*c_solve) {
      vc.metric = parse_metric(metric);
      if (nmax > 0) vc.n_max_noimp = nmax;
      auto res = vns_solve(inst, construct(parse_method(method), inst), vc);
      detail::emit(sched_out, write_schedule(res.best), out);
      out << "cost " << res.best.cost << '\n'
          << served_line(res.best, inst) << "iterations " << res.stats.iterations << '\n';
      if (!stats_path.empty()) ::dsts::detail::write_file(stats_path, stats_csv(res.stats));
      return 0;
    }
    if (*c_exact) {
      const ExactResult r = brute_force_optimum(inst, lim);
      detail::emit(sched_out, write_schedule(r.schedule), out);
      out << "cost " << r.cost << '\n' << served_line(r.schedule, inst) << "nodes " << r.nodes << '\n';
      return 0;
    }
    if (*c_exp) {
      milp::Model m;
      if (formulation == "bigm") {
        m = milp::build_bigm(inst, literal);
      } else if (formulation == "arctime") {
        m = milp::build_arc_time(inst, {preprocess, symmetry, detail::parse_cuts(cuts)});
      } else if (formulation == "rmp") {
        std::vector<dw::PseudoSchedule> cols;
        if (columns_path.empty())
          cols.push_back(dw::warm_start_column(inst));
        else
          cols = dw::read_columns(inst, ::dsts::detail::read_file(columns_path));
        m = dw::build_rmp(inst, cols);
      } else {
        const dw::DualValues duals =
            duals_path.empty() ? dw::DualValues{} : dw::read_duals(::dsts::detail::read_file(duals_path));
        m = dw::build_pricing(inst, duals, {tight, symmetry, detail::parse_cuts(cuts)});
      }
      detail::emit(lp_out, milp::write_lp(m), out);
      return 0;
    }
    if (*c_check) {
      Schedule s = read_schedule(::dsts::detail::read_file(schedule_path));
      const auto violations = check_schedule(inst, s);
      if (!violations.empty()) {
        detail::print_violations(violations, out);
        return 1;
      }
      refresh(inst, s);
      out << "feasible cost " << s.cost << '\n' << served_line(s, inst);
      if (against.empty()) return 0;
      milp::Model m;
      milp::Assignment a;
      if (against == "arctime") {
        m = milp::build_arc_time(inst, {preprocess, symmetry, detail::parse_cuts(cuts)});
        a = milp::schedule_to_assignment(inst, s, milp::Formulation::ArcTime);
      } else {
        m = milp::build_bigm(inst, against == "bigm-literal");
        a = milp::schedule_to_assignment(inst, s, milp::Formulation::BigM);
      }
      const auto model_violations = milp::check_solution(m, a);
      for (const auto& v : model_violations)
        out << "model violation " << milp::kind_name(v.kind) << ' ' << v.name << " residual " << to_decimal(v.residual)
            << '\n';
      if (!model_violations.empty()) return 1;
      out << "model " << m.name << " satisfied (objective " << to_decimal(m.objective_value(a)) << ")\n";
      return 0;
    }
  } catch (const InfeasibleSchedule& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace dsts::cli
