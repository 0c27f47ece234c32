#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "boblp/baselines.hpp"
#include "boblp/bench.hpp"
#include "boblp/engine.hpp"
#include "boblp/model.hpp"
#include "boblp/rng.hpp"

namespace boblp::cli {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kAlgoNames = {"bb",         "bc-mp",   "bc-isc", "bc-isc-mp",
                                             "cut-branch", "epsilon", "brute"};

struct RunFlags {
  std::vector<std::string> algos{"bb"};
  bool epb = false;
  std::vector<std::string> lambda;  // empty vector with count > 0 means "given without value"
  CLI::Option* lambda_opt = nullptr;
  std::string lambda_strategy = "dichotomic";
  std::string node_select = "breadth";
  double time_limit = 3600.0;
  std::uint64_t seed = 0;

  RunSpec spec(const std::string& algo) const {
    RunSpec s;
    s.algo = algo;
    s.epb = epb;
    if (lambda_opt && lambda_opt->count() > 0) {
      s.lambda = lambda.empty() || lambda.front().empty() ? 2 : std::stoul(lambda.front());
    }
    s.lambda_strategy = parse_lambda_strategy(lambda_strategy);
    s.node_select = parse_node_select(node_select);
    s.time_limit = time_limit;
    s.seed = seed;
    return s;
  }
};

void add_run_flags(CLI::App* app, RunFlags& f, bool many_algos) {
  if (many_algos) {
    app->add_option("--algo", f.algos, "algorithms (repeat or comma separated)")
        ->delimiter(',')
        ->check(CLI::IsMember(kAlgoNames))
        ->capture_default_str();
  } else {
    app->add_option("--algo", f.algos.front(), "algorithm")->check(CLI::IsMember(kAlgoNames))->capture_default_str();
  }
  app->add_flag("--epb", f.epb, "extended Pareto branching");
  f.lambda_opt = app->add_option("--lambda", f.lambda, "weighted-sum budget per node (2 when no value)")
                     ->expected(0, 1)
                     ->check(CLI::PositiveNumber);
  app->add_option("--lambda-strategy", f.lambda_strategy)
      ->check(CLI::IsMember({"dichotomic", "equilibrate", "chordal"}))
      ->capture_default_str();
  app->add_option("--node-select", f.node_select)
      ->check(CLI::IsMember({"depth", "breadth", "random"}))
      ->capture_default_str();
  app->add_option("--time-limit", f.time_limit, "seconds")->check(CLI::NonNegativeNumber)->capture_default_str();
  app->add_option("--seed", f.seed)->capture_default_str();
}

std::string fmt_point(const Point& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.10g %.10g", p.y1, p.y2);
  return buf;
}

int cmd_solve(const std::string& path, const RunFlags& f, std::ostream& out, std::ostream& err) {
  Instance inst;
  try {
    inst = load_instance(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  SolveReport rep;
  const RunSpec spec = f.spec(f.algos.front());
  try {
    if (spec.algo == "brute") {
      rep = brute_force(inst);
    } else if (spec.algo == "epsilon") {
      EpsilonConfig ec;
      ec.time_limit = spec.time_limit;
      rep = epsilon_constraint(inst, ec);
    } else {
      EngineConfig cfg;
      cfg.algo = parse_algo(spec.algo);
      cfg.epb = spec.epb;
      cfg.lambda_budget = spec.lambda;
      cfg.lambda_strategy = spec.lambda_strategy;
      cfg.node_select = spec.node_select;
      cfg.time_limit = spec.time_limit;
      cfg.seed = spec.seed;
      rep = solve(inst, cfg);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const Point& p : rep.ynd) out << fmt_point(p) << '\n';
  std::size_t n_eff = 0;
  for (const auto& s : rep.efficient) n_eff += s.size();
  out << "# instance   " << inst.name << " (n=" << inst.n << ", m=" << inst.m << ")\n";
  out << "# algo       " << spec.algo << (spec.epb ? " +epb" : "");
  if (spec.lambda) out << " lambda=" << *spec.lambda;
  out << '\n';
  out << "# ynd        " << rep.ynd.size() << '\n';
  out << "# efficient  " << n_eff << '\n';
  out << "# nodes      " << rep.nodes_explored << '\n';
  out << "# cuts       sp=" << rep.sp_cuts << " mp=" << rep.mp_cuts << '\n';
  out << "# lp solves  " << rep.weighted_solves << '\n';
  if (rep.iterations) out << "# iterations " << rep.iterations << '\n';
  char t[32];
  std::snprintf(t, sizeof t, "%.3f", rep.wall_time);
  out << "# time_s     " << t << '\n';
  out << "# status     " << (rep.timed_out ? "timeout" : "complete") << '\n';
  return rep.timed_out ? kExitTimeout : kExitOk;
}

int cmd_generate(const std::string& family, std::size_t n, std::uint64_t seed, std::size_t count, double rho,
                 const std::string& out_dir, std::ostream& out, std::ostream& err) {
  GeneratorConfig cfg;
  try {
    cfg.family = parse_family(family);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  cfg.n = n;
  cfg.target_rho = rho;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  for (std::size_t k = 0; k < count; ++k) {
    cfg.seed = count == 1 ? seed : SplitMix64::derive(seed, k);
    Instance inst;
    try {
      inst = generate(cfg);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    const fs::path file = fs::path(out_dir) / (inst.name + ".boblp");
    std::ofstream os(file);
    if (!os) {
      err << "error: cannot write " << file.string() << '\n';
      return kExitUsage;
    }
    write_instance(os, inst);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", pearson(inst.c1, inst.c2));
    out << file.string() << " rho=" << buf << '\n';
  }
  return kExitOk;
}

std::vector<std::string> collect_instances(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> here;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && e.path().extension() == ".boblp") here.push_back(e.path().string());
      }
      std::sort(here.begin(), here.end());
      files.insert(files.end(), here.begin(), here.end());
    } else {
      files.push_back(in);
    }
  }
  return files;
}

int cmd_bench(const std::vector<std::string>& inputs, const RunFlags& f, bool aggregate, std::size_t workers,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::vector<Instance> instances;
  for (const std::string& file : collect_instances(inputs)) {
    try {
      instances.push_back(load_instance(file));
    } catch (const std::exception& e) {
      err << "error: " << file << ": " << e.what() << '\n';
      return kExitUsage;
    }
  }
  if (instances.empty()) {
    err << "error: no instances found\n";
    return kExitUsage;
  }
  std::vector<RunSpec> specs;
  for (const std::string& a : f.algos) specs.push_back(f.spec(a));
  const std::vector<BenchRow> rows = run_bench(instances, specs, workers);
  if (out_path.empty() || out_path == "-") {
    write_csv(out, rows, aggregate);
  } else {
    std::ofstream os(out_path);
    if (!os) {
      err << "error: cannot write " << out_path << '\n';
      return kExitUsage;
    }
    write_csv(os, rows, aggregate);
  }
  const bool any_timeout = std::any_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.timed_out; });
  return any_timeout ? kExitTimeout : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solver toolkit for bi-objective binary linear programs", "boblp"};
  app.require_subcommand(1);

  RunFlags solve_flags;
  std::string solve_path;
  auto* solve = app.add_subcommand("solve", "solve one instance and print its nondominated points");
  add_run_flags(solve, solve_flags, false);
  solve->add_option("instance", solve_path, "instance file")->required();

  std::string family = "knapsack", gen_out = ".";
  std::size_t gen_n = 20, gen_count = 1;
  std::uint64_t gen_seed = 0;
  double gen_rho = -0.92;
  auto* gen = app.add_subcommand("generate", "write random instances");
  gen->add_option("--family", family)->capture_default_str();
  gen->add_option("--n", gen_n)->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--count", gen_count)->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--rho", gen_rho, "target objective correlation")->capture_default_str();
  gen->add_option("--out", gen_out, "output directory")->capture_default_str();

  RunFlags bench_flags;
  std::vector<std::string> bench_inputs;
  std::string bench_out;
  bool aggregate = false;
  std::size_t workers = 1;
  auto* bench = app.add_subcommand("bench", "run algorithms over instances and write CSV");
  add_run_flags(bench, bench_flags, true);
  bench->add_option("instances", bench_inputs, "instance files or directories")->required();
  bench->add_flag("--aggregate", aggregate, "append mean rows per size bucket");
  bench->add_option("--workers", workers)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--out", bench_out, "CSV path (stdout when omitted)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_path, solve_flags, out, err);
    if (*gen) return cmd_generate(family, gen_n, gen_seed, gen_count, gen_rho, gen_out, out, err);
    if (*bench) return cmd_bench(bench_inputs, bench_flags, aggregate, workers, bench_out, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace boblp::cli
