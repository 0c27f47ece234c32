#include "boblp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

namespace boblp {

void IlpLimits::validate() const {
  if (time_limit && *time_limit < 0.0) throw Error(ErrorCode::kInvalidArgument, "time limit must be >= 0");
}

namespace {

constexpr std::size_t kRootRounds = 5;
constexpr double kPruneTol = 1e-9;

using Clock = std::chrono::steady_clock;

std::vector<std::uint8_t> round_bits(const LpModel& model, std::span<const double> x) {
  std::vector<std::uint8_t> bits(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    bits[j] = model.fixings[j] >= 0 ? static_cast<std::uint8_t>(model.fixings[j]) : (x[j] >= 0.5 ? 1 : 0);
  }
  return bits;
}

// Total violation of instance rows and objective bounds.
double violation(const LpModel& model, std::span<const std::uint8_t> bits) {
  const Instance& inst = *model.inst;
  double v = 0.0;
  for (std::size_t i = 0; i < inst.m; ++i) {
    const auto row = inst.row(i);
    double lhs = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (bits[j]) lhs += row[j];
    }
    const double d = lhs - inst.b[i];
    switch (inst.senses[i]) {
      case Sense::kLessEqual: v += std::max(0.0, d); break;
      case Sense::kGreaterEqual: v += std::max(0.0, -d); break;
      case Sense::kEqual: v += std::abs(d); break;
    }
  }
  for (const ObjectiveBound& ob : model.objective_bounds) {
    const auto c = inst.objective(ob.k);
    double z = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (bits[j]) z += c[j];
    }
    v += std::max(0.0, z - ob.upper);
  }
  return v;
}

// Greedy flips of free variables, each strictly reducing the violation.
bool repair(const LpModel& model, std::vector<std::uint8_t>& bits, std::span<const double> w) {
  const std::size_t n = bits.size();
  double cur = violation(model, bits);
  for (std::size_t step = 0; step < n && cur > kTolFeas; ++step) {
    std::size_t best = n;
    double best_v = cur;
    double best_dc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (model.fixings[j] >= 0) continue;
      bits[j] ^= 1;
      const double v = violation(model, bits);
      const double dc = bits[j] ? w[j] : -w[j];
      bits[j] ^= 1;
      if (v < best_v - 1e-12 || (best < n && std::abs(v - best_v) <= 1e-12 && dc < best_dc)) {
        best = j;
        best_v = v;
        best_dc = dc;
      }
    }
    if (best == n) return false;
    bits[best] ^= 1;
    cur = best_v;
  }
  return cur <= kTolFeas;
}

std::optional<SolutionVec> heuristic(const LpModel& model, const SolutionVec& x, const ScalarDirection& lam,
                                     std::span<const double> w) {
  auto bits = round_bits(model, x.values);
  if (model.admits(bits)) return make_binary(bits);
  if (repair(model, bits, w) && model.admits(bits)) return make_binary(bits);

  // Dive: fix the least fractional free variable to its rounding.
  LpModel dive = model;
  SolutionVec cur = x;
  for (std::size_t step = 0; step < model.n(); ++step) {
    std::size_t pick = model.n();
    double dist = 1.0;
    for (std::size_t j = 0; j < model.n(); ++j) {
      if (dive.fixings[j] >= 0) continue;
      const double f = std::min(cur[j], 1.0 - cur[j]);
      if (f > kTolInt && f < dist) {
        dist = f;
        pick = j;
      }
    }
    if (pick == model.n()) break;
    dive.fix(pick, cur[pick] >= 0.5 ? 1 : 0);
    const LpResult r = solve_weighted(dive, lam, false);
    if (!r.optimal()) return std::nullopt;
    cur = r.x;
    if (cur.integral) {
      auto b = cur.bits();
      if (model.admits(b)) return make_binary(b);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool has_cut(const std::vector<LinearCut>& cuts, const CutKey& key) {
  for (const LinearCut& c : cuts) {
    if (c.kind == CutKind::kCover && c.key() == key) return true;
  }
  return false;
}

}  // namespace

IlpOutcome BuiltinOracle::solve(const LpModel& model, const ScalarDirection& lambda, const IlpLimits& limits) const {
  limits.validate();
  const auto t0 = Clock::now();
  const auto out_of_time = [&] {
    return limits.time_limit &&
           std::chrono::duration<double>(Clock::now() - t0).count() >= *limits.time_limit;
  };
  const Instance& inst = *model.inst;
  const ScalarDirection lam = lambda.normalized();
  const bool lex = lam.is_axis();
  std::vector<double> w(inst.n);
  for (std::size_t j = 0; j < inst.n; ++j) w[j] = lam.l1 * inst.c1[j] + lam.l2 * inst.c2[j];

  IlpOutcome out;
  LpModel root = model;
  LpResult lp;
  for (std::size_t round = 0;; ++round) {
    lp = solve_weighted(root, lam, lex);
    if (!lp.optimal()) {
      out.status = IlpStatus::kInfeasible;
      return out;
    }
    if (round == kRootRounds || lp.x.integral) break;
    bool found = false;
    for (std::size_t i = 0; i < inst.m; ++i) {
      auto cut = cover_separate_single(inst, i, lp.x.values);
      if (!cut || has_cut(root.cuts, cut->key())) continue;
      out.root_cuts.push_back({*cut, {lp.x.values}});
      root.cuts.push_back(*cut);
      found = true;
    }
    if (!found) break;
  }
  out.bound_point = lp.point;
  out.bound_x = lp.x;
  out.nodes = 1;

  std::optional<SolutionVec> best;
  double best_val = std::numeric_limits<double>::infinity();
  const auto offer = [&](const SolutionVec& s) {
    out.incumbents_found.push_back(s);
    const double v = lam.dot(evaluate(inst, s));
    if (v < best_val - kPruneTol) {
      best_val = v;
      best = s;
    }
  };

  if (lp.x.integral && model.admits(lp.x.bits())) {
    offer(make_binary(lp.x.bits()));
    out.status = IlpStatus::kOptimal;
    out.incumbent = best;
    out.bound_point = evaluate(inst, *best);
    out.bound_x = best;
    return out;
  }
  if (auto h = heuristic(root, lp.x, lam, w)) offer(*h);

  const double root_val = lam.dot(lp.point);
  if ((limits.node_limit && *limits.node_limit == 0) || out_of_time()) {
    out.status = best && best_val <= root_val + kPruneTol ? IlpStatus::kOptimal : IlpStatus::kLimitReached;
    out.incumbent = best;
    if (out.status == IlpStatus::kOptimal) {
      out.bound_point = evaluate(inst, *best);
      out.bound_x = best;
    }
    return out;
  }

  struct Node {
    double lb;
    std::size_t seq;
    std::vector<std::int8_t> fix;
  };
  const auto cmp = [](const Node& a, const Node& b) { return a.lb > b.lb || (a.lb == b.lb && a.seq > b.seq); };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);
  std::size_t seq = 0;
  open.push({root_val, seq++, root.fixings});
  bool limit_hit = false;
  std::size_t explored = 0;
  LpModel sub = root;
  while (!open.empty()) {
    if ((limits.node_limit && explored >= *limits.node_limit) || out_of_time()) {
      limit_hit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.lb >= best_val - kPruneTol) break;
    ++explored;
    sub.fixings = node.fix;
    const LpResult r = solve_weighted(sub, lam, false);
    if (!r.optimal()) continue;
    const double v = lam.dot(r.point);
    if (v >= best_val - kPruneTol) continue;
    if (r.x.integral) {
      const auto bits = r.x.bits();
      if (model.admits(bits)) offer(make_binary(bits));
      continue;
    }
    std::size_t pick = inst.n;
    double frac = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (node.fix[j] >= 0) continue;
      const double f = std::min(r.x[j], 1.0 - r.x[j]);
      if (f > frac + 1e-12) {
        frac = f;
        pick = j;
      }
    }
    if (pick == inst.n) continue;
    for (int v01 : {0, 1}) {
      Node child{v, seq++, node.fix};
      child.fix[pick] = static_cast<std::int8_t>(v01);
      open.push(std::move(child));
    }
  }
  out.nodes += explored;
  out.incumbent = best;
  if (limit_hit) {
    out.status = IlpStatus::kLimitReached;
  } else if (best) {
    out.status = IlpStatus::kOptimal;
    out.bound_point = evaluate(inst, *best);
    out.bound_x = best;
  } else {
    out.status = IlpStatus::kInfeasible;
  }
  return out;
}

IlpOutcome ilp_solve(const LpModel& model, const ScalarDirection& lambda, const IlpLimits& limits) {
  return BuiltinOracle{}.solve(model, lambda, limits);
}

std::optional<SolutionVec> ilp_lexmin(const LpModel& model, int k, const IlpLimits& limits) {
  const ScalarDirection first = k == 0 ? ScalarDirection(1.0, 0.0) : ScalarDirection(0.0, 1.0);
  const ScalarDirection second = k == 0 ? ScalarDirection(0.0, 1.0) : ScalarDirection(1.0, 0.0);
  const IlpOutcome a = ilp_solve(model, first, limits);
  if (a.status != IlpStatus::kOptimal || !a.incumbent) return std::nullopt;
  const Point za = evaluate(*model.inst, *a.incumbent);
  LpModel tied = model;
  tied.objective_bounds.push_back({k, k == 0 ? za.y1 : za.y2});
  const IlpOutcome b = ilp_solve(tied, second, limits);
  if (b.status != IlpStatus::kOptimal || !b.incumbent) return a.incumbent;
  return b.incumbent;
}

std::optional<IscOutcome> isc_lbs(const LpModel& model, const IlpLimits& limits, std::optional<std::size_t> budget,
                                  const LowerBoundSet& inherited, LambdaStrategy strategy,
                                  const IlpOracle* oracle) {
  const BuiltinOracle builtin;
  const IlpOracle& orc = oracle ? *oracle : builtin;
  IscOutcome out;
  LpModel work = model;
  const ProbeFn probe = [&](const ScalarDirection& lam, bool) -> std::optional<Probe> {
    IlpOutcome r = orc.solve(work, lam, limits);
    if (r.status == IlpStatus::kInfeasible) return std::nullopt;
    for (auto& rec : r.root_cuts) {
      work.cuts.push_back(rec.cut);
      out.accumulated.push_back(rec.cut);
      out.cuts.push_back(std::move(rec));
    }
    for (auto& s : r.incumbents_found) out.incumbents.push_back(std::move(s));
    out.hyperplanes.push_back({lam.normalized(), r.bound_point});
    return Probe{r.bound_point, r.bound_x};
  };
  auto fr = fold_frontier(probe, budget, strategy, inherited);
  if (!fr) return std::nullopt;
  out.frontier = std::move(*fr);
  return out;
}

}  // namespace boblp
