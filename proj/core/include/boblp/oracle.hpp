#pragma once

#include <optional>
#include <vector>

#include "boblp/cuts.hpp"
#include "boblp/lp.hpp"

namespace boblp {

struct IlpLimits {
  std::optional<std::size_t> node_limit;
  std::optional<double> time_limit;  // seconds

  void validate() const;
};

enum class IlpStatus : std::uint8_t { kOptimal, kLimitReached, kInfeasible };

struct IlpOutcome {
  IlpStatus status = IlpStatus::kInfeasible;
  std::optional<SolutionVec> incumbent;
  /// z of the best relaxation solution after the root cuts, or z of the
  /// incumbent once it is proven optimal. lambda . z(x) >= lambda . bound_point
  /// for every x feasible for the model.
  Point bound_point;
  /// The relaxation solution behind bound_point.
  std::optional<SolutionVec> bound_x;
  std::vector<SolutionVec> incumbents_found;
  /// Root cover cuts; valid for the whole instance.
  std::vector<CutRecord> root_cuts;
  std::size_t nodes = 0;
};

/// Scalarized single-objective ILP over the model. Pluggable.
class IlpOracle {
 public:
  virtual ~IlpOracle() = default;
  virtual IlpOutcome solve(const LpModel& model, const ScalarDirection& lambda, const IlpLimits& limits) const = 0;
};

/// Root LP, up to 5 rounds of single-point cover cuts on the instance rows,
/// a round/repair/dive heuristic, then best-bound branch-and-bound unless
/// node_limit is 0.
class BuiltinOracle final : public IlpOracle {
 public:
  IlpOutcome solve(const LpModel& model, const ScalarDirection& lambda, const IlpLimits& limits) const override;
};

IlpOutcome ilp_solve(const LpModel& model, const ScalarDirection& lambda, const IlpLimits& limits);

/// Lexicographic ILP: min z_k, then min the other objective at that value.
/// nullopt when infeasible.
std::optional<SolutionVec> ilp_lexmin(const LpModel& model, int k, const IlpLimits& limits = {});

struct IscHyperplane {
  ScalarDirection lambda;
  Point y;
};

struct IscOutcome {
  Frontier frontier;
  std::vector<SolutionVec> incumbents;
  std::vector<IscHyperplane> hyperplanes;
  std::vector<CutRecord> cuts;
  /// All root cuts collected over the sweep, for callers that keep them.
  std::vector<LinearCut> accumulated;
};

/// Bound set from limited scalarized ILP solves folded as supporting
/// hyperplanes. Root cuts accumulate across the sweep's solves.
std::optional<IscOutcome> isc_lbs(const LpModel& model, const IlpLimits& limits, std::optional<std::size_t> budget,
                                  const LowerBoundSet& inherited = {},
                                  LambdaStrategy strategy = LambdaStrategy::kDichotomic,
                                  const IlpOracle* oracle = nullptr);

}  // namespace boblp
