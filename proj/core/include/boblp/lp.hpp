#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "boblp/cut.hpp"
#include "boblp/geometry.hpp"
#include "boblp/model.hpp"
#include "boblp/simplex.hpp"

namespace boblp {

/// z_k(x) <= upper, from Pareto branching.
struct ObjectiveBound {
  int k = 0;
  double upper = 0.0;
};

/// The relaxation of a node: the instance rows over [0,1]^n plus fixings,
/// cuts and objective-space bounds.
struct LpModel {
  std::shared_ptr<const Instance> inst;
  std::vector<std::int8_t> fixings;  // -1 free, else 0/1
  std::vector<LinearCut> cuts;
  std::vector<ObjectiveBound> objective_bounds;

  LpModel() = default;
  explicit LpModel(std::shared_ptr<const Instance> instance);

  std::size_t n() const { return inst->n; }
  void fix(std::size_t j, int v) { fixings[j] = static_cast<std::int8_t>(v); }
  std::size_t free_count() const;
  std::optional<std::size_t> first_free() const;

  /// Feasibility of a 0/1 vector for everything except cuts (which are
  /// valid for the instance anyway).
  bool admits(std::span<const std::uint8_t> bits) const;
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  SolutionVec x;
  double value = 0.0;
  Point point;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

/// One phase 1, many objectives. Holds a simplex over the model's rows.
class LpSession {
 public:
  explicit LpSession(const LpModel& model);

  bool feasible() { return simplex_.feasible(); }

  /// With lex set and an axis direction, ties are broken by the other
  /// objective.
  LpResult solve(const ScalarDirection& lambda, bool lex);

  /// Minimizes an arbitrary structural cost; empty when infeasible.
  std::optional<std::vector<double>> minimize(std::span<const double> cost);

  std::size_t solves() const { return solves_; }
  bool certify_optimal() const { return simplex_.certify_optimal(); }

 private:
  const Instance& inst_;
  DenseSimplex simplex_;
  std::size_t solves_ = 0;
};

LpResult solve_weighted(const LpModel& model, const ScalarDirection& lambda, bool lex_tiebreak);

/// A lower bound set with the primal solutions known to map onto its
/// vertices (intersection vertices have none).
struct Frontier {
  LowerBoundSet lbs;
  std::vector<std::optional<SolutionVec>> solutions;
  /// Every primal solution produced while building the bound set.
  std::vector<SolutionVec> probes;
  std::size_t weighted_solves = 0;
};

std::optional<Frontier> dichotomy_lbs(const LpModel& model);

enum class LambdaStrategy : std::uint8_t { kDichotomic, kEquilibrate, kChordal };

std::string_view to_string(LambdaStrategy s);
LambdaStrategy parse_lambda_strategy(std::string_view s);

/// Result of one scalarized probe: a criteria point valid as a supporting
/// hyperplane anchor for the probed direction.
struct Probe {
  Point y;
  std::optional<SolutionVec> x;
};

/// nullopt means the probed region is infeasible.
using ProbeFn = std::function<std::optional<Probe>(const ScalarDirection&, bool lex)>;

/// Builds a bound set by folding supporting hyperplanes (lambda, y) from
/// probe calls into `start` (or into the corner of the lexicographic
/// endpoints when start is empty). With no budget the dichotomic order runs
/// to completion. Budget counts probe calls.
std::optional<Frontier> fold_frontier(const ProbeFn& probe, std::optional<std::size_t> budget,
                                      LambdaStrategy strategy, const LowerBoundSet& start);

std::optional<Frontier> budgeted_lbs(const LpModel& model, std::size_t budget, LambdaStrategy strategy,
                                     const LowerBoundSet& inherited);

}  // namespace boblp
