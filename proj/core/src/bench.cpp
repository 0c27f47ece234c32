#include "boblp/bench.hpp"

#include <atomic>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include "boblp/baselines.hpp"

namespace boblp {

void validate_algo_name(std::string_view algo) {
  if (algo == "epsilon" || algo == "brute") return;
  parse_algo(algo);
}

BenchRow run_one(const Instance& inst, const RunSpec& spec, SolveReport* report) {
  BenchRow row;
  row.instance = inst.name;
  row.n = inst.n;
  row.m = inst.m;
  row.algo = spec.algo;
  row.epb = spec.epb;
  row.lambda = spec.lambda;
  SolveReport rep;
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
  } catch (const std::exception&) {
    row.timed_out = true;
    if (report) *report = SolveReport{};
    return row;
  }
  row.time_s = rep.wall_time;
  row.timed_out = rep.timed_out;
  row.nodes = rep.nodes_explored;
  row.sp_cuts = rep.sp_cuts;
  row.mp_cuts = rep.mp_cuts;
  row.ynd_count = rep.ynd.size();
  if (report) *report = std::move(rep);
  return row;
}

std::vector<BenchRow> run_bench(const std::vector<Instance>& instances, const std::vector<RunSpec>& specs,
                                std::size_t workers) {
  std::vector<BenchRow> rows(instances.size() * specs.size());
  const auto work = [&](std::size_t i) {
    for (std::size_t s = 0; s < specs.size(); ++s) rows[i * specs.size() + s] = run_one(instances[i], specs[s]);
  };
  if (workers <= 1 || instances.size() <= 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, instances.size()); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < instances.size(); i = next++) work(i);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

std::string csv_line(const BenchRow& r) {
  char t[32];
  std::snprintf(t, sizeof t, "%.6f", r.time_s);
  std::string s;
  s += r.instance;
  s += ',' + std::to_string(r.n);
  s += ',' + std::to_string(r.m);
  s += ',' + r.algo;
  s += ',' + std::string(r.epb ? "1" : "0");
  s += ',' + (r.lambda ? std::to_string(*r.lambda) : std::string());
  s += ',' + std::string(t);
  s += ',' + std::string(r.timed_out ? "1" : "0");
  s += ',' + std::to_string(r.nodes);
  s += ',' + std::to_string(r.sp_cuts);
  s += ',' + std::to_string(r.mp_cuts);
  s += ',' + std::to_string(r.ynd_count);
  return s;
}

std::vector<std::string> aggregate_lines(const std::vector<BenchRow>& rows) {
  using Key = std::tuple<std::size_t, std::string, bool, std::size_t>;
  struct Acc {
    double n = 0, m = 0, time = 0, nodes = 0, sp = 0, mp = 0, ynd = 0;
    bool timed_out = false;
    std::size_t count = 0;
    std::optional<std::size_t> lambda;
  };
  std::map<Key, Acc> groups;
  for (const BenchRow& r : rows) {
    const Key k{r.n / 10, r.algo, r.epb, r.lambda ? *r.lambda : 0};
    Acc& a = groups[k];
    a.n += static_cast<double>(r.n);
    a.m += static_cast<double>(r.m);
    a.time += r.time_s;
    a.nodes += static_cast<double>(r.nodes);
    a.sp += static_cast<double>(r.sp_cuts);
    a.mp += static_cast<double>(r.mp_cuts);
    a.ynd += static_cast<double>(r.ynd_count);
    a.timed_out |= r.timed_out;
    a.lambda = r.lambda;
    ++a.count;
  }
  std::vector<std::string> out;
  for (const auto& [k, a] : groups) {
    const double c = static_cast<double>(a.count);
    const std::size_t lo = std::get<0>(k) * 10;
    char buf[512];
    std::snprintf(buf, sizeof buf, "mean:n%zu-%zu,%.1f,%.1f,%s,%d,%s,%.6f,%d,%.1f,%.1f,%.1f,%.1f", lo, lo + 9,
                  a.n / c, a.m / c, std::get<1>(k).c_str(), std::get<2>(k) ? 1 : 0,
                  a.lambda ? std::to_string(*a.lambda).c_str() : "", a.time / c, a.timed_out ? 1 : 0,
                  a.nodes / c, a.sp / c, a.mp / c, a.ynd / c);
    out.emplace_back(buf);
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool aggregate) {
  out << kCsvHeader << '\n';
  for (const BenchRow& r : rows) out << csv_line(r) << '\n';
  if (aggregate) {
    for (const std::string& l : aggregate_lines(rows)) out << l << '\n';
  }
}

}  // namespace boblp
