#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "boblp/model.hpp"

namespace boblp {

inline constexpr double kTolOpt = 1e-7;

enum class LpStatus : std::uint8_t { kOptimal, kInfeasible, kUnbounded };

/// Dense bounded-variable primal simplex on a full tableau.
///
/// Columns are the structural variables, then one slack per row
/// (a_i x + s_i = b_i, s_i >= 0 for <=, s_i <= 0 for >=, s_i = 0 for =).
/// Phase 1 uses one artificial per row whose slack cannot absorb the
/// initial residual; artificials are never stored as tableau columns since
/// they cannot re-enter. The basis survives across objectives, so a single
/// phase 1 serves a whole sweep of weighted solves.
class DenseSimplex {
 public:
  DenseSimplex(std::size_t n, std::span<const double> a, std::span<const Sense> senses,
               std::span<const double> b, std::span<const double> lo, std::span<const double> hi);

  /// Runs phase 1 on first call. False when the row system is infeasible.
  bool feasible();

  /// Minimizes cost . x (structural costs only) from the current basis.
  LpStatus minimize(std::span<const double> cost);

  /// Fixes every nonbasic structural/slack whose reduced cost for the last
  /// objective exceeds kTolOpt, so a following minimize keeps that
  /// objective optimal. release_locks() restores the bounds.
  void lock_optimal_face();
  void release_locks();

  std::vector<double> x() const;
  double objective(std::span<const double> cost) const;

  /// Reduced-cost sign check against the bounds for the last objective.
  bool certify_optimal(double tol = 1e-6) const;

  std::size_t pivots() const { return pivots_; }

 private:
  enum : std::int8_t { kBasic = 0, kAtLo = 1, kAtHi = 2 };

  std::size_t n_, m_, cols_;
  std::vector<double> a_;  // original rows, m x n
  std::vector<double> b_;
  std::vector<double> lo_, hi_;
  std::vector<double> val_;           // value per column (nonbasic at bound, basic from beta)
  std::vector<std::int8_t> state_;
  std::vector<std::size_t> basis_;    // column per row; >= cols_ means artificial (row index + cols_)
  std::vector<double> art_sign_;      // per row, sign of its artificial
  std::vector<double> art_hi_;        // artificial upper bound (inf in phase 1, 0 after)
  std::vector<double> tab_;           // m x cols_, B^-1 [A I]
  std::vector<double> beta_;          // basic values
  std::vector<double> d_;             // reduced costs per column
  std::vector<double> last_cost_;     // per column, incl. slacks (0)
  std::vector<std::pair<std::size_t, std::pair<double, double>>> locks_;
  bool phase1_done_ = false;
  bool feasible_ = false;
  std::size_t pivots_ = 0;
  std::size_t since_refactor_ = 0;

  double& t(std::size_t i, std::size_t j) { return tab_[i * cols_ + j]; }
  double t(std::size_t i, std::size_t j) const { return tab_[i * cols_ + j]; }

  double basic_lo(std::size_t i) const;
  double basic_hi(std::size_t i) const;
  double column_entry(std::size_t row, std::size_t col) const;

  void compute_reduced_costs(std::span<const double> colcost, std::span<const double> artcost);
  LpStatus iterate(std::span<const double> colcost, std::span<const double> artcost);
  void pivot(std::size_t r, std::size_t q);
  bool refactor();
  void drive_out_artificials();
};

}  // namespace boblp
