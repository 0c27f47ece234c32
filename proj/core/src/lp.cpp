#include "boblp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace boblp {

namespace {

constexpr double kImprove = 1e-7;

std::vector<double> model_bounds(const LpModel& model, bool upper) {
  std::vector<double> v(model.n());
  for (std::size_t j = 0; j < model.n(); ++j) {
    const auto f = model.fixings[j];
    v[j] = f < 0 ? (upper ? 1.0 : 0.0) : static_cast<double>(f);
  }
  return v;
}

struct RowBlock {
  std::vector<double> a;
  std::vector<Sense> senses;
  std::vector<double> b;
};

RowBlock model_rows(const LpModel& model) {
  const Instance& inst = *model.inst;
  RowBlock rb;
  const std::size_t rows = inst.m + model.cuts.size() + model.objective_bounds.size();
  rb.a.reserve(rows * inst.n);
  rb.a.insert(rb.a.end(), inst.a.begin(), inst.a.end());
  rb.senses = inst.senses;
  rb.b = inst.b;
  for (const LinearCut& c : model.cuts) {
    // A cut that holds at every point of the fixed box adds nothing.
    double worst = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) {
      const double a = c.coeffs[j];
      if (a == 0.0) continue;
      const auto f = model.fixings[j];
      worst += f < 0 ? std::max(a, 0.0) : a * f;
    }
    if (worst <= c.rhs + kTolFeas) continue;
    rb.a.insert(rb.a.end(), c.coeffs.begin(), c.coeffs.end());
    rb.senses.push_back(Sense::kLessEqual);
    rb.b.push_back(c.rhs);
  }
  for (const ObjectiveBound& ob : model.objective_bounds) {
    const auto obj = inst.objective(ob.k);
    rb.a.insert(rb.a.end(), obj.begin(), obj.end());
    rb.senses.push_back(Sense::kLessEqual);
    rb.b.push_back(ob.upper);
  }
  return rb;
}

DenseSimplex make_simplex(const LpModel& model) {
  const RowBlock rb = model_rows(model);
  const auto lo = model_bounds(model, false);
  const auto hi = model_bounds(model, true);
  return DenseSimplex(model.n(), rb.a, rb.senses, rb.b, lo, hi);
}

}  // namespace

LpModel::LpModel(std::shared_ptr<const Instance> instance)
    : inst(std::move(instance)), fixings(inst->n, -1) {}

std::size_t LpModel::free_count() const {
  return static_cast<std::size_t>(std::count(fixings.begin(), fixings.end(), std::int8_t{-1}));
}

std::optional<std::size_t> LpModel::first_free() const {
  for (std::size_t j = 0; j < fixings.size(); ++j) {
    if (fixings[j] < 0) return j;
  }
  return std::nullopt;
}

bool LpModel::admits(std::span<const std::uint8_t> bits) const {
  for (std::size_t j = 0; j < fixings.size(); ++j) {
    if (fixings[j] >= 0 && bits[j] != static_cast<std::uint8_t>(fixings[j])) return false;
  }
  if (!is_feasible_bits(*inst, bits)) return false;
  if (objective_bounds.empty()) return true;
  double z[2] = {0.0, 0.0};
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j]) {
      z[0] += inst->c1[j];
      z[1] += inst->c2[j];
    }
  }
  for (const ObjectiveBound& ob : objective_bounds) {
    if (z[ob.k] > ob.upper + kTolFeas) return false;
  }
  return true;
}

LpSession::LpSession(const LpModel& model) : inst_(*model.inst), simplex_(make_simplex(model)) {}

LpResult LpSession::solve(const ScalarDirection& lambda, bool lex) {
  LpResult res;
  ++solves_;
  const ScalarDirection lam = lambda.normalized();
  std::vector<double> cost(inst_.n);
  for (std::size_t j = 0; j < inst_.n; ++j) cost[j] = lam.l1 * inst_.c1[j] + lam.l2 * inst_.c2[j];
  res.status = simplex_.minimize(cost);
  if (res.status != LpStatus::kOptimal) return res;
  if (lex && lam.is_axis()) {
    simplex_.lock_optimal_face();
    simplex_.minimize(lam.l1 > 0.0 ? inst_.c2 : inst_.c1);
    simplex_.release_locks();
  }
  res.x = SolutionVec(simplex_.x());
  res.point = evaluate(inst_, res.x);
  res.value = lam.dot(res.point);
  return res;
}

std::optional<std::vector<double>> LpSession::minimize(std::span<const double> cost) {
  if (simplex_.minimize(cost) != LpStatus::kOptimal) return std::nullopt;
  return simplex_.x();
}

LpResult solve_weighted(const LpModel& model, const ScalarDirection& lambda, bool lex_tiebreak) {
  LpSession s(model);
  return s.solve(lambda, lex_tiebreak);
}

namespace {

struct Anchor {
  Point y;
  std::optional<SolutionVec> x;
};

Frontier finish(LowerBoundSet lbs, const std::vector<Anchor>& anchors, std::size_t solves) {
  Frontier fr;
  fr.lbs = std::move(lbs);
  fr.weighted_solves = solves;
  fr.solutions.resize(fr.lbs.size());
  for (std::size_t i = 0; i < fr.lbs.size(); ++i) {
    for (const Anchor& a : anchors) {
      if (a.x && near(a.y, fr.lbs[i])) {
        fr.solutions[i] = a.x;
        break;
      }
    }
  }
  for (const Anchor& a : anchors) {
    if (a.x) fr.probes.push_back(*a.x);
  }
  return fr;
}

}  // namespace

std::optional<Frontier> dichotomy_lbs(const LpModel& model) {
  LpSession s(model);
  if (!s.feasible()) return std::nullopt;
  const LpResult l = s.solve({1.0, 0.0}, true);
  if (!l.optimal()) return std::nullopt;
  const LpResult r = s.solve({0.0, 1.0}, true);
  if (!r.optimal()) return std::nullopt;

  std::vector<Anchor> chain{{l.point, l.x}};
  if (!near(l.point, r.point)) {
    // Depth-first refinement between consecutive chain points; explicit
    // stack of (left, right) anchors keeps the output ordered.
    struct Seg {
      Anchor a, b;
    };
    std::vector<Seg> stack{{{l.point, l.x}, {r.point, r.x}}};
    while (!stack.empty()) {
      Seg seg = std::move(stack.back());
      stack.pop_back();
      ScalarDirection lam;
      try {
        lam = segment_normal(seg.a.y, seg.b.y);
      } catch (const Error&) {
        chain.push_back(seg.b);
        continue;
      }
      const LpResult y = s.solve(lam, false);
      if (y.optimal() && lam.dot(y.point) < lam.dot(seg.a.y) - kImprove) {
        Anchor mid{y.point, y.x};
        stack.push_back({mid, seg.b});
        stack.push_back({seg.a, mid});
      } else {
        chain.push_back(seg.b);
      }
    }
  }
  std::vector<Point> pts;
  pts.reserve(chain.size());
  for (const Anchor& a : chain) pts.push_back(a.y);
  return finish(LowerBoundSet::canonical(std::move(pts)), chain, s.solves());
}

std::string_view to_string(LambdaStrategy s) {
  switch (s) {
    case LambdaStrategy::kDichotomic: return "dichotomic";
    case LambdaStrategy::kEquilibrate: return "equilibrate";
    case LambdaStrategy::kChordal: return "chordal";
  }
  return "?";
}

LambdaStrategy parse_lambda_strategy(std::string_view s) {
  for (auto v : {LambdaStrategy::kDichotomic, LambdaStrategy::kEquilibrate, LambdaStrategy::kChordal}) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown lambda strategy '" + std::string(s) + "'");
}

std::optional<Frontier> fold_frontier(const ProbeFn& probe, std::optional<std::size_t> budget,
                                      LambdaStrategy strategy, const LowerBoundSet& start) {
  std::size_t used = 0;
  std::vector<Anchor> anchors;
  LowerBoundSet bound = start;
  const auto room = [&] { return !budget || used < *budget; };
  const auto call = [&](const ScalarDirection& lam, bool lex) -> std::optional<Anchor> {
    ++used;
    auto p = probe(lam, lex);
    if (!p) return std::nullopt;
    anchors.push_back({p->y, p->x});
    return anchors.back();
  };
  const auto fold = [&](const ScalarDirection& lam, const Point& y) {
    bound = intersect_update(bound, lam, y).lbs;
  };

  if (strategy == LambdaStrategy::kChordal && start.size() < 2) strategy = LambdaStrategy::kEquilibrate;
  const bool need_ends = start.empty() || strategy == LambdaStrategy::kDichotomic || !budget;

  std::optional<Anchor> left, right;
  if (need_ends) {
    left = call({1.0, 0.0}, true);
    if (!left) return std::nullopt;
    if (room() || start.empty()) {
      right = call({0.0, 1.0}, true);
      if (!right) return std::nullopt;
    }
    if (bound.empty()) {
      bound = LowerBoundSet({Point{left->y.y1, right->y.y2}});
    } else {
      fold({1.0, 0.0}, left->y);
      if (right) fold({0.0, 1.0}, right->y);
    }
  }

  if (strategy == LambdaStrategy::kDichotomic || !budget) {
    if (left && right && !near(left->y, right->y)) {
      struct Item {
        double len;
        std::size_t seq;
        Anchor a, b;
      };
      const auto cmp = [](const Item& p, const Item& q) {
        return p.len < q.len || (p.len == q.len && p.seq > q.seq);
      };
      std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
      std::size_t seq = 0;
      const auto push = [&](const Anchor& a, const Anchor& b) {
        queue.push({std::hypot(b.y.y1 - a.y.y1, b.y.y2 - a.y.y2), seq++, a, b});
      };
      push(*left, *right);
      while (!queue.empty() && room()) {
        Item it = queue.top();
        queue.pop();
        ScalarDirection lam;
        try {
          lam = segment_normal(it.a.y, it.b.y);
        } catch (const Error&) {
          continue;
        }
        const auto y = call(lam, false);
        if (!y) return std::nullopt;
        fold(lam, y->y);
        if (lam.dot(y->y) < lam.dot(it.a.y) - kImprove) {
          push(it.a, *y);
          push(*y, it.b);
        }
      }
    }
  } else if (strategy == LambdaStrategy::kEquilibrate) {
    const std::size_t k = *budget;
    for (std::size_t t = 1; t <= k && room(); ++t) {
      const double l1 = static_cast<double>(t) / static_cast<double>(k + 1);
      const ScalarDirection lam(l1, 1.0 - l1);
      const auto y = call(lam, false);
      if (!y) return std::nullopt;
      fold(lam, y->y);
    }
  } else {
    const std::size_t k = *budget;
    const std::size_t last = start.size() - 1;
    std::vector<ScalarDirection> dirs;
    std::size_t prev = 0;
    for (std::size_t t = 1; t <= k; ++t) {
      const auto idx = static_cast<std::size_t>(std::llround(static_cast<double>(t * last) / static_cast<double>(k)));
      if (idx <= prev) continue;
      const ScalarDirection lam = segment_normal(start[prev], start[idx]);
      if (dirs.empty() || !(std::abs(dirs.back().l1 - lam.l1) < 1e-12)) dirs.push_back(lam);
      prev = idx;
    }
    for (const ScalarDirection& lam : dirs) {
      if (!room()) break;
      const auto y = call(lam, false);
      if (!y) return std::nullopt;
      fold(lam, y->y);
    }
  }
  return finish(std::move(bound), anchors, used);
}

std::optional<Frontier> budgeted_lbs(const LpModel& model, std::size_t budget, LambdaStrategy strategy,
                                     const LowerBoundSet& inherited) {
  if (budget < 1) throw Error(ErrorCode::kInvalidArgument, "lambda budget must be >= 1");
  LpSession s(model);
  if (!s.feasible()) return std::nullopt;
  const ProbeFn probe = [&](const ScalarDirection& lam, bool lex) -> std::optional<Probe> {
    const LpResult r = s.solve(lam, lex);
    if (!r.optimal()) return std::nullopt;
    return Probe{r.point, r.x};
  };
  return fold_frontier(probe, budget, strategy, inherited);
}

}  // namespace boblp
