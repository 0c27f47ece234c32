#include "boblp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace boblp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kRatioTie = 1e-11;
constexpr double kPhase1Tol = 1e-7;
constexpr std::size_t kRefactorEvery = 50;

}  // namespace

DenseSimplex::DenseSimplex(std::size_t n, std::span<const double> a, std::span<const Sense> senses,
                           std::span<const double> b, std::span<const double> lo,
                           std::span<const double> hi)
    : n_(n), m_(b.size()), cols_(n + b.size()), a_(a.begin(), a.end()), b_(b.begin(), b.end()) {
  lo_.assign(cols_, 0.0);
  hi_.assign(cols_, 0.0);
  val_.assign(cols_, 0.0);
  state_.assign(cols_, kAtLo);
  basis_.assign(m_, 0);
  art_sign_.assign(m_, 1.0);
  art_hi_.assign(m_, 0.0);
  tab_.assign(m_ * cols_, 0.0);
  beta_.assign(m_, 0.0);
  d_.assign(cols_, 0.0);
  last_cost_.assign(cols_, 0.0);

  for (std::size_t j = 0; j < n_; ++j) {
    lo_[j] = lo[j];
    hi_[j] = hi[j];
    val_[j] = lo[j];
  }
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t s = n_ + i;
    switch (senses[i]) {
      case Sense::kLessEqual: lo_[s] = 0.0; hi_[s] = kInf; state_[s] = kAtLo; break;
      case Sense::kGreaterEqual: lo_[s] = -kInf; hi_[s] = 0.0; state_[s] = kAtHi; break;
      case Sense::kEqual: lo_[s] = 0.0; hi_[s] = 0.0; state_[s] = kAtLo; break;
    }
    double r = b_[i];
    for (std::size_t j = 0; j < n_; ++j) r -= a_[i * n_ + j] * val_[j];
    double* row = &tab_[i * cols_];
    for (std::size_t j = 0; j < n_; ++j) row[j] = a_[i * n_ + j];
    row[s] = 1.0;
    if (r >= lo_[s] && r <= hi_[s]) {
      basis_[i] = s;
      state_[s] = kBasic;
      val_[s] = r;
      beta_[i] = r;
    } else {
      const double sigma = r > 0.0 ? 1.0 : -1.0;
      art_sign_[i] = sigma;
      art_hi_[i] = kInf;
      basis_[i] = cols_ + i;
      for (std::size_t j = 0; j < cols_; ++j) row[j] *= sigma;
      beta_[i] = std::abs(r);
    }
  }
}

double DenseSimplex::basic_lo(std::size_t i) const {
  return basis_[i] >= cols_ ? 0.0 : lo_[basis_[i]];
}

double DenseSimplex::basic_hi(std::size_t i) const {
  return basis_[i] >= cols_ ? art_hi_[basis_[i] - cols_] : hi_[basis_[i]];
}

double DenseSimplex::column_entry(std::size_t row, std::size_t col) const {
  if (col < n_) return a_[row * n_ + col];
  if (col < cols_) return col - n_ == row ? 1.0 : 0.0;
  return col - cols_ == row ? art_sign_[row] : 0.0;
}

bool DenseSimplex::feasible() {
  if (phase1_done_) return feasible_;
  phase1_done_ = true;
  bool any_art = false;
  for (std::size_t i = 0; i < m_; ++i) any_art |= basis_[i] >= cols_;
  if (any_art) {
    std::vector<double> colcost(cols_, 0.0);
    std::vector<double> artcost(m_, 1.0);
    iterate(colcost, artcost);
    if (since_refactor_ > 0) refactor();
    double infeas = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= cols_) infeas += beta_[i];
    }
    if (infeas > kPhase1Tol) {
      feasible_ = false;
      return false;
    }
    drive_out_artificials();
  }
  std::fill(art_hi_.begin(), art_hi_.end(), 0.0);
  feasible_ = true;
  return true;
}

void DenseSimplex::drive_out_artificials() {
  for (std::size_t r = 0; r < m_; ++r) {
    if (basis_[r] < cols_) continue;
    std::size_t best = cols_;
    double best_abs = 1e-7;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (state_[j] == kBasic) continue;
      if (std::abs(t(r, j)) > best_abs) {
        best_abs = std::abs(t(r, j));
        best = j;
      }
    }
    if (best == cols_) continue;  // redundant row: artificial stays basic at zero
    pivot(r, best);
    basis_[r] = best;
    state_[best] = kBasic;
    beta_[r] = val_[best];
  }
}

void DenseSimplex::compute_reduced_costs(std::span<const double> colcost, std::span<const double> artcost) {
  for (std::size_t j = 0; j < cols_; ++j) d_[j] = colcost[j];
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t bcol = basis_[i];
    const double cb = bcol >= cols_ ? artcost[bcol - cols_] : colcost[bcol];
    if (cb == 0.0) continue;
    const double* row = &tab_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) d_[j] -= cb * row[j];
  }
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis_[i] < cols_) d_[basis_[i]] = 0.0;
  }
}

void DenseSimplex::pivot(std::size_t r, std::size_t q) {
  double* prow = &tab_[r * cols_];
  const double piv = prow[q];
  for (std::size_t j = 0; j < cols_; ++j) prow[j] /= piv;
  prow[q] = 1.0;
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &tab_[i * cols_];
    const double f = row[q];
    if (f == 0.0) continue;
    for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * prow[j];
    row[q] = 0.0;
  }
  const double f = d_[q];
  if (f != 0.0) {
    for (std::size_t j = 0; j < cols_; ++j) d_[j] -= f * prow[j];
    d_[q] = 0.0;
  }
  ++pivots_;
  ++since_refactor_;
}

LpStatus DenseSimplex::iterate(std::span<const double> colcost, std::span<const double> artcost) {
  compute_reduced_costs(colcost, artcost);
  const std::size_t bland_after = 3 * (n_ + m_);
  const std::size_t max_iter = 100 * (cols_ + m_) + 1000;
  std::size_t degenerate = 0;
  bool bland = false;

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::size_t q = cols_;
    double qdir = 0.0;
    double best = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (state_[j] == kBasic || lo_[j] == hi_[j]) continue;
      double score = 0.0;
      double dir = 0.0;
      if (state_[j] == kAtLo && d_[j] < -kTolOpt) {
        score = -d_[j];
        dir = 1.0;
      } else if (state_[j] == kAtHi && d_[j] > kTolOpt) {
        score = d_[j];
        dir = -1.0;
      } else {
        continue;
      }
      if (bland) {
        q = j;
        qdir = dir;
        break;
      }
      if (score > best) {
        best = score;
        q = j;
        qdir = dir;
      }
    }
    if (q == cols_) {
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] < cols_) val_[basis_[i]] = beta_[i];
      }
      return LpStatus::kOptimal;
    }

    double tmax = hi_[q] - lo_[q];
    std::size_t r = m_;
    double r_alpha = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double alpha = qdir * t(i, q);
      if (std::abs(alpha) <= kPivotTol) continue;
      double lim;
      if (alpha > 0.0) {
        const double lb = basic_lo(i);
        if (lb == -kInf) continue;
        lim = (beta_[i] - lb) / alpha;
      } else {
        const double ub = basic_hi(i);
        if (ub == kInf) continue;
        lim = (ub - beta_[i]) / -alpha;
      }
      lim = std::max(lim, 0.0);
      bool take = false;
      if (lim < tmax - kRatioTie) {
        take = true;
      } else if (r < m_ && lim <= tmax + kRatioTie) {
        take = bland ? basis_[i] < basis_[r] : std::abs(alpha) > std::abs(r_alpha);
      }
      if (take) {
        tmax = std::min(tmax, lim);
        r = i;
        r_alpha = alpha;
      }
    }
    if (tmax == kInf) return LpStatus::kUnbounded;

    const double step = tmax;
    if (step > kRatioTie) {
      degenerate = 0;
      for (std::size_t i = 0; i < m_; ++i) beta_[i] -= qdir * t(i, q) * step;
    } else if (++degenerate > bland_after) {
      bland = true;
    }
    const double entering_val = val_[q] + qdir * step;

    if (r == m_) {
      // bound flip
      if (qdir > 0) {
        state_[q] = kAtHi;
        val_[q] = hi_[q];
      } else {
        state_[q] = kAtLo;
        val_[q] = lo_[q];
      }
      continue;
    }

    const std::size_t leaving = basis_[r];
    if (leaving < cols_) {
      if (r_alpha > 0.0) {
        state_[leaving] = kAtLo;
        val_[leaving] = lo_[leaving];
      } else {
        state_[leaving] = kAtHi;
        val_[leaving] = hi_[leaving];
      }
    }
    pivot(r, q);
    basis_[r] = q;
    state_[q] = kBasic;
    val_[q] = entering_val;
    beta_[r] = entering_val;

    if (since_refactor_ >= kRefactorEvery && refactor()) compute_reduced_costs(colcost, artcost);
  }
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis_[i] < cols_) val_[basis_[i]] = beta_[i];
  }
  return LpStatus::kOptimal;
}

// Rebuilds B^-1 [A I] and the basic values from the original data by
// Gaussian elimination with partial pivoting on the basis matrix.
bool DenseSimplex::refactor() {
  if (m_ == 0) {
    since_refactor_ = 0;
    return true;
  }
  const std::size_t w = m_ + cols_ + 1;
  std::vector<double> aug(m_ * w, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    double* row = &aug[i * w];
    for (std::size_t k = 0; k < m_; ++k) row[k] = column_entry(i, basis_[k]);
    for (std::size_t j = 0; j < cols_; ++j) row[m_ + j] = column_entry(i, j);
    double rhs = b_[i];
    for (std::size_t j = 0; j < cols_; ++j) {
      if (state_[j] != kBasic && val_[j] != 0.0) rhs -= column_entry(i, j) * val_[j];
    }
    row[w - 1] = rhs;
  }
  for (std::size_t k = 0; k < m_; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < m_; ++i) {
      if (std::abs(aug[i * w + k]) > std::abs(aug[p * w + k])) p = i;
    }
    if (std::abs(aug[p * w + k]) < 1e-12) return false;
    if (p != k) {
      for (std::size_t j = 0; j < w; ++j) std::swap(aug[p * w + j], aug[k * w + j]);
    }
    double* krow = &aug[k * w];
    const double piv = krow[k];
    for (std::size_t j = k; j < w; ++j) krow[j] /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == k) continue;
      double* row = &aug[i * w];
      const double f = row[k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < w; ++j) row[j] -= f * krow[j];
    }
  }
  // Row k of the reduced system now belongs to basis_[k].
  for (std::size_t i = 0; i < m_; ++i) {
    const double* row = &aug[i * w];
    std::copy(row + m_, row + m_ + cols_, &tab_[i * cols_]);
    beta_[i] = row[w - 1];
    if (basis_[i] < cols_) {
      for (std::size_t k = 0; k < m_; ++k) {
        if (basis_[k] < cols_) tab_[i * cols_ + basis_[k]] = k == i ? 1.0 : 0.0;
      }
    }
  }
  since_refactor_ = 0;
  return true;
}

LpStatus DenseSimplex::minimize(std::span<const double> cost) {
  if (!feasible()) return LpStatus::kInfeasible;
  std::fill(last_cost_.begin(), last_cost_.end(), 0.0);
  std::copy(cost.begin(), cost.end(), last_cost_.begin());
  std::vector<double> artcost(m_, 0.0);
  const LpStatus st = iterate(last_cost_, artcost);
  if (since_refactor_ > 0 && refactor()) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < cols_) val_[basis_[i]] = beta_[i];
    }
    compute_reduced_costs(last_cost_, artcost);
  }
  return st;
}

void DenseSimplex::lock_optimal_face() {
  for (std::size_t j = 0; j < cols_; ++j) {
    if (state_[j] == kBasic || lo_[j] == hi_[j]) continue;
    if (std::abs(d_[j]) > kTolOpt) {
      locks_.push_back({j, {lo_[j], hi_[j]}});
      lo_[j] = hi_[j] = val_[j];
    }
  }
}

void DenseSimplex::release_locks() {
  for (const auto& [j, bounds] : locks_) {
    lo_[j] = bounds.first;
    hi_[j] = bounds.second;
  }
  locks_.clear();
}

std::vector<double> DenseSimplex::x() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = std::clamp(val_[j], lo_[j], hi_[j]);
  return out;
}

double DenseSimplex::objective(std::span<const double> cost) const {
  const auto xs = x();
  double v = 0.0;
  for (std::size_t j = 0; j < n_; ++j) v += cost[j] * xs[j];
  return v;
}

bool DenseSimplex::certify_optimal(double tol) const {
  for (std::size_t j = 0; j < cols_; ++j) {
    if (state_[j] == kBasic || lo_[j] == hi_[j]) continue;
    if (state_[j] == kAtLo && d_[j] < -tol) return false;
    if (state_[j] == kAtHi && d_[j] > tol) return false;
  }
  for (std::size_t i = 0; i < m_; ++i) {
    if (beta_[i] < basic_lo(i) - tol || beta_[i] > basic_hi(i) + tol) return false;
  }
  return true;
}

}  // namespace boblp
