#include "boblp/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace boblp {

// ---------------------------------------------------------------------------
// LinearCut

double LinearCut::lhs(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * x[j];
  return s;
}

CutKey LinearCut::key() const {
  CutKey k;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] > 0.5) k.support.push_back(static_cast<std::int32_t>(j + 1));
    else if (coeffs[j] < -0.5) k.support.push_back(-static_cast<std::int32_t>(j + 1));
  }
  std::sort(k.support.begin(), k.support.end());
  k.rhs = std::llround(rhs);
  return k;
}

std::string LinearCut::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0.0) continue;
    if (!first) os << (coeffs[j] < 0 ? " - " : " + ");
    else if (coeffs[j] < 0) os << "-";
    if (std::abs(coeffs[j]) != 1.0) os << std::abs(coeffs[j]) << "*";
    os << "x" << j + 1;
    first = false;
  }
  os << " <= " << rhs;
  return os.str();
}

std::size_t CutKeyHash::operator()(const CutKey& k) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(k.rhs);
  for (std::int32_t v : k.support) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// CutPool

bool CutPool::contains(const CutKey& key) const {
  for (const CutPool* p = this; p != nullptr; p = p->parent_.get()) {
    if (p->keys_.count(key)) return true;
  }
  return false;
}

bool CutPool::insert(const LinearCut& cut) {
  CutKey key = cut.key();
  if (contains(key)) return false;
  keys_.insert(std::move(key));
  cuts_.push_back(cut);
  return true;
}

std::vector<LinearCut> CutPool::lineage() const {
  std::vector<const CutPool*> chain;
  for (const CutPool* p = this; p != nullptr; p = p->parent_.get()) chain.push_back(p);
  std::vector<LinearCut> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    out.insert(out.end(), (*it)->cuts_.begin(), (*it)->cuts_.end());
  }
  return out;
}

bool pool_check(const CutPool& pool, const LinearCut& cut) { return pool.contains(cut.key()); }

void MpConfig::validate() const {
  if (max_step < 1) throw Error(ErrorCode::kInvalidArgument, "max_step must be >= 1");
  if (!(min_cut_fraction > 0.0 && min_cut_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "min_cut_fraction must lie in (0, 1]");
  }
  if (max_rounds < 1) throw Error(ErrorCode::kInvalidArgument, "max_rounds must be >= 1");
}

// ---------------------------------------------------------------------------
// Cover separation

namespace {

// Greedy cover on sum a_j x_j <= b (one direction of an instance row).
// Candidates are ordered by the pointwise min of the targets, or by their
// mean; either way the cover is kept only if it cuts every target.
std::optional<LinearCut> greedy_cover(std::span<const double> a, double b,
                                      std::span<const std::vector<double>> targets, bool by_mean) {
  const std::size_t n = a.size();
  double cap = b;
  std::vector<std::size_t> vars;
  std::vector<double> w(n, 0.0), xbar(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j] == 0.0) continue;
    const bool comp = a[j] < 0.0;
    w[j] = std::abs(a[j]);
    if (comp) cap += w[j];
    if (by_mean) {
      double sum = 0.0;
      for (const auto& t : targets) sum += comp ? 1.0 - t[j] : t[j];
      xbar[j] = sum / static_cast<double>(targets.size());
    } else {
      for (const auto& t : targets) xbar[j] = std::min(xbar[j], comp ? 1.0 - t[j] : t[j]);
    }
    vars.push_back(j);
  }
  if (cap < 0.0) return std::nullopt;
  std::sort(vars.begin(), vars.end(), [&](std::size_t p, std::size_t q) {
    if (xbar[p] != xbar[q]) return xbar[p] > xbar[q];
    if (w[p] != w[q]) return w[p] > w[q];
    return p < q;
  });
  // Each target must keep sum_{j in C} (1 - x_j) < 1 to stay violated.
  double load = 0.0;
  std::vector<double> residual(targets.size(), 0.0);
  std::size_t size = 0;
  for (std::size_t j : vars) {
    load += w[j];
    ++size;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const double v = a[j] < 0.0 ? 1.0 - targets[t][j] : targets[t][j];
      residual[t] += 1.0 - v;
      if (residual[t] >= 1.0 - kTolCut) return std::nullopt;
    }
    if (load > cap + 1e-9) break;
  }
  if (load <= cap + 1e-9) return std::nullopt;

  LinearCut cut;
  cut.kind = CutKind::kCover;
  cut.coeffs.assign(n, 0.0);
  double rhs = static_cast<double>(size) - 1.0;
  for (std::size_t k = 0; k < size; ++k) {
    const std::size_t j = vars[k];
    if (a[j] < 0.0) {
      cut.coeffs[j] = -1.0;
      rhs -= 1.0;
    } else {
      cut.coeffs[j] = 1.0;
    }
  }
  cut.rhs = rhs;
  return cut;
}

template <class Fn>
std::optional<LinearCut> for_row_directions(const Instance& inst, std::size_t row, Fn&& fn) {
  const auto r = inst.row(row);
  const double b = inst.b[row];
  const Sense s = inst.senses[row];
  if (s == Sense::kLessEqual || s == Sense::kEqual) {
    if (auto c = fn(r, b)) return c;
  }
  if (s == Sense::kGreaterEqual || s == Sense::kEqual) {
    std::vector<double> neg(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) neg[j] = -r[j];
    if (auto c = fn(std::span<const double>(neg), -b)) return c;
  }
  return std::nullopt;
}

}  // namespace

std::optional<LinearCut> cover_separate_multi(const Instance& inst, std::size_t row,
                                              std::span<const std::vector<double>> targets) {
  if (targets.empty()) return std::nullopt;
  auto cut = for_row_directions(inst, row, [&](std::span<const double> a, double b) {
    if (auto c = greedy_cover(a, b, targets, false)) return c;
    if (targets.size() > 1) return greedy_cover(a, b, targets, true);
    return std::optional<LinearCut>{};
  });
  if (cut) cut->origin = targets.size() > 1 ? CutOrigin::kMultiPoint : CutOrigin::kSinglePoint;
  return cut;
}

std::optional<LinearCut> cover_separate_single(const Instance& inst, std::size_t row, std::span<const double> x) {
  const std::vector<std::vector<double>> t{std::vector<double>(x.begin(), x.end())};
  return cover_separate_multi(inst, row, t);
}

// ---------------------------------------------------------------------------
// Multi-point cutting plane

namespace {

bool model_has(const LpModel& model, const CutKey& key) {
  for (const LinearCut& c : model.cuts) {
    if (c.kind == CutKind::kCover && c.key() == key) return true;
  }
  return false;
}

}  // namespace

MpOutcome multipoint_cutting_plane(LpModel& model, Frontier frontier, const MpConfig& cfg, CutPool& pool,
                                   const ReoptFn& reopt) {
  cfg.validate();
  MpOutcome out;
  const Instance& inst = *model.inst;

  for (std::size_t round = 0; round < cfg.max_rounds; ++round) {
    const std::size_t k = frontier.lbs.size();
    const auto fractional = [&](std::size_t i) {
      return frontier.solutions[i] && !frontier.solutions[i]->integral;
    };
    std::size_t points_cut = 0;
    std::size_t added = 0;
    std::size_t l = 0;
    while (l < k) {
      bool hit = false;
      for (std::size_t delta = cfg.max_step; delta >= 1 && !hit; --delta) {
        const std::size_t r = l + delta - 1;
        if (r >= k || !fractional(l) || !fractional(r)) continue;
        std::vector<std::vector<double>> targets{frontier.solutions[l]->values};
        if (r != l) targets.push_back(frontier.solutions[r]->values);
        for (std::size_t row = 0; row < inst.m; ++row) {
          auto cut = cover_separate_multi(inst, row, targets);
          if (!cut) continue;
          hit = true;
          const CutKey key = cut->key();
          if (pool.insert(*cut)) {
            if (delta > 1) ++out.mp_cuts;
            else ++out.sp_cuts;
            out.records.push_back({*cut, targets});
            model.cuts.push_back(*cut);
            ++added;
          } else if (!model_has(model, key)) {
            cut->origin = CutOrigin::kInherited;
            model.cuts.push_back(*cut);
            ++added;
          }
        }
        if (hit) {
          points_cut += delta;
          l = r + 1;
        }
      }
      if (!hit) ++l;
    }
    if (added == 0) break;
    ++out.rounds;
    auto next = reopt(model);
    if (!next) {
      out.frontier = std::nullopt;
      return out;
    }
    out.weighted_solves += next->weighted_solves;
    frontier = std::move(*next);
    if (static_cast<double>(points_cut) < cfg.min_cut_fraction * static_cast<double>(k)) break;
  }
  out.frontier = std::move(frontier);
  return out;
}

}  // namespace boblp
