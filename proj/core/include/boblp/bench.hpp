#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boblp/engine.hpp"
#include "boblp/model.hpp"

namespace boblp {

inline constexpr std::string_view kCsvHeader =
    "instance,n,m,algo,epb,lambda,time_s,timed_out,nodes,sp_cuts,mp_cuts,ynd_count";

/// One benchmark configuration. algo is an engine algorithm name or one of
/// the baselines "epsilon" and "brute".
struct RunSpec {
  std::string algo = "bb";
  bool epb = false;
  std::optional<std::size_t> lambda;
  LambdaStrategy lambda_strategy = LambdaStrategy::kDichotomic;
  NodeSelect node_select = NodeSelect::kBreadth;
  double time_limit = 3600.0;
  std::uint64_t seed = 0;
};

/// Throws kInvalidArgument for unknown algorithm names.
void validate_algo_name(std::string_view algo);

struct BenchRow {
  std::string instance;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string algo;
  bool epb = false;
  std::optional<std::size_t> lambda;
  double time_s = 0.0;
  bool timed_out = false;
  std::size_t nodes = 0;
  std::size_t sp_cuts = 0;
  std::size_t mp_cuts = 0;
  std::size_t ynd_count = 0;
};

/// Runs one configuration. Failures become rows with timed_out set.
BenchRow run_one(const Instance& inst, const RunSpec& spec, SolveReport* report = nullptr);

/// One row per (instance, spec), instance-major, in input order. Workers > 1
/// dispatch instances to a thread pool; rows keep input order.
std::vector<BenchRow> run_bench(const std::vector<Instance>& instances, const std::vector<RunSpec>& specs,
                                std::size_t workers = 1);

std::string csv_line(const BenchRow& row);

/// Mean rows per (size bucket = decade of n, algo, epb, lambda).
std::vector<std::string> aggregate_lines(const std::vector<BenchRow>& rows);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool aggregate);

}  // namespace boblp
