#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "boblp/cut.hpp"
#include "boblp/lp.hpp"

namespace boblp {

inline constexpr double kTolCut = 1e-6;

/// Cuts generated at one node, chained to the pools of its ancestors.
class CutPool {
 public:
  explicit CutPool(std::shared_ptr<const CutPool> parent = nullptr) : parent_(std::move(parent)) {}

  /// Key present here or in any ancestor.
  bool contains(const CutKey& key) const;
  /// False (and no change) when the key is already in the lineage.
  bool insert(const LinearCut& cut);

  const std::vector<LinearCut>& local() const { return cuts_; }
  /// Cuts of this pool and all ancestors, oldest first.
  std::vector<LinearCut> lineage() const;
  const std::shared_ptr<const CutPool>& parent() const { return parent_; }

 private:
  std::shared_ptr<const CutPool> parent_;
  std::unordered_set<CutKey, CutKeyHash> keys_;
  std::vector<LinearCut> cuts_;
};

bool pool_check(const CutPool& pool, const LinearCut& cut);

struct MpConfig {
  std::size_t max_step = 3;
  double min_cut_fraction = 0.6;
  std::size_t max_rounds = 5;

  void validate() const;
};

/// Greedy cover separation on instance row `row` (>= rows are negated, =
/// rows tried in both directions, negative coefficients complemented).
std::optional<LinearCut> cover_separate_single(const Instance& inst, std::size_t row, std::span<const double> x);

/// One cover cut violated by every target, built from their pointwise
/// minimum in complemented space.
std::optional<LinearCut> cover_separate_multi(const Instance& inst, std::size_t row,
                                              std::span<const std::vector<double>> targets);

/// An emitted cut together with the fractional points it was built to cut.
struct CutRecord {
  LinearCut cut;
  std::vector<std::vector<double>> targets;
};

struct MpOutcome {
  std::optional<Frontier> frontier;  // nullopt: node became infeasible
  std::size_t sp_cuts = 0;
  std::size_t mp_cuts = 0;
  std::size_t rounds = 0;
  std::size_t weighted_solves = 0;
  std::vector<CutRecord> records;
};

using ReoptFn = std::function<std::optional<Frontier>(const LpModel&)>;

/// Multi-point cutting plane loop. New cuts go into `pool` and `model.cuts`.
MpOutcome multipoint_cutting_plane(LpModel& model, Frontier frontier, const MpConfig& cfg, CutPool& pool,
                                   const ReoptFn& reopt);

}  // namespace boblp
