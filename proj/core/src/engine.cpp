#include "boblp/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace boblp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kCutBranchIterations = 10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool all_integral(const Frontier& fr) {
  for (const auto& s : fr.solutions) {
    if (!s || !s->integral) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(Algo a) {
  switch (a) {
    case Algo::kBb: return "bb";
    case Algo::kBcMp: return "bc-mp";
    case Algo::kBcIsc: return "bc-isc";
    case Algo::kBcIscMp: return "bc-isc-mp";
    case Algo::kCutBranch: return "cut-branch";
  }
  return "?";
}

Algo parse_algo(std::string_view s) {
  for (Algo a : {Algo::kBb, Algo::kBcMp, Algo::kBcIsc, Algo::kBcIscMp, Algo::kCutBranch}) {
    if (to_string(a) == s) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + std::string(s) + "'");
}

std::string_view to_string(NodeSelect s) {
  switch (s) {
    case NodeSelect::kDepth: return "depth";
    case NodeSelect::kBreadth: return "breadth";
    case NodeSelect::kRandom: return "random";
  }
  return "?";
}

NodeSelect parse_node_select(std::string_view s) {
  for (NodeSelect v : {NodeSelect::kDepth, NodeSelect::kBreadth, NodeSelect::kRandom}) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown node selection '" + std::string(s) + "'");
}

std::string_view to_string(NodeState s) {
  switch (s) {
    case NodeState::kOpen: return "open";
    case NodeState::kInfeasible: return "fathomed-infeasible";
    case NodeState::kIntegrity: return "fathomed-integrity";
    case NodeState::kDominance: return "fathomed-dominance";
    case NodeState::kBranched: return "branched";
  }
  return "?";
}

void EngineConfig::validate() const {
  if (lambda_budget && *lambda_budget < 1) throw Error(ErrorCode::kInvalidArgument, "lambda budget must be >= 1");
  if (!(time_limit >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "time limit must be >= 0");
  mp.validate();
  ilp_limits.validate();
}

NadirKey fingerprint(const Point& u) {
  const auto q = [](double v) -> std::int64_t {
    if (v == kInf) return std::numeric_limits<std::int64_t>::max();
    return std::llround(v / kTolGeom);
  };
  return {q(u.y1), q(u.y2)};
}

Node NodeQueue::pop() {
  std::size_t idx = 0;
  switch (rule_) {
    case NodeSelect::kBreadth: idx = 0; break;
    case NodeSelect::kDepth: idx = nodes_.size() - 1; break;
    case NodeSelect::kRandom:
      idx = static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(nodes_.size()) - 1));
      break;
  }
  Node n = std::move(nodes_[idx]);
  nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(idx));
  return n;
}

// ---------------------------------------------------------------------------

Engine::Engine(std::shared_ptr<const Instance> inst, EngineConfig cfg) : inst_(std::move(inst)), cfg_(cfg) {
  cfg_.validate();
}

Node Engine::make_root() {
  Node root;
  root.id = next_id_++;
  root.fixings.assign(inst_->n, -1);
  root.nadirs_seen = std::make_shared<const NadirSet>();
  return root;
}

LpModel Engine::node_model(const Node& node) const {
  LpModel m(inst_);
  m.fixings = node.fixings;
  m.objective_bounds = node.bounds;
  if (node.parent_pool) m.cuts = node.parent_pool->lineage();
  return m;
}

void Engine::archive_solution(const SolutionVec& x) {
  if (!x.integral) return;
  const auto bits = x.bits();
  if (!is_feasible_bits(*inst_, bits)) return;
  const SolutionVec clean = make_binary(bits);
  archive_.insert(evaluate(*inst_, clean), clean);
}

std::optional<Frontier> Engine::relaxation_bound(const LpModel& model, const Node& node, bool exhaustive) {
  std::optional<Frontier> fr;
  if (exhaustive || !cfg_.lambda_budget || node.inherited.empty()) {
    fr = dichotomy_lbs(model);
  } else {
    fr = budgeted_lbs(model, *cfg_.lambda_budget, cfg_.lambda_strategy, node.inherited);
  }
  if (fr) {
    solves_ += fr->weighted_solves;
    for (const SolutionVec& x : fr->probes) archive_solution(x);
  }
  return fr;
}

std::optional<Frontier> Engine::isc_bound(const LpModel& model, const Node& node, bool exhaustive) {
  const bool budgeted = !exhaustive && cfg_.lambda_budget && !node.inherited.empty();
  auto isc = isc_lbs(model, cfg_.ilp_limits, budgeted ? cfg_.lambda_budget : std::nullopt,
                     budgeted ? node.inherited : LowerBoundSet{}, cfg_.lambda_strategy, cfg_.oracle);
  if (!isc) return std::nullopt;
  if (cfg_.trace) {
    for (const auto& h : isc->hyperplanes) {
      cfg_.trace->hyperplanes.push_back({h.lambda, h.y, model.fixings, model.objective_bounds});
    }
    for (auto& c : isc->cuts) cfg_.trace->cuts.push_back(std::move(c));
  }
  for (const SolutionVec& x : isc->incumbents) archive_solution(x);
  for (const SolutionVec& x : isc->frontier.probes) archive_solution(x);
  solves_ += isc->frontier.weighted_solves;
  return std::move(isc->frontier);
}

std::optional<Frontier> Engine::cut_branch_root(LpModel& model, Node& node) {
  std::optional<Frontier> fr;
  for (std::size_t iter = 0; iter < kCutBranchIterations; ++iter) {
    auto isc = isc_lbs(model, cfg_.ilp_limits, std::nullopt, {}, cfg_.lambda_strategy, cfg_.oracle);
    if (!isc) return std::nullopt;
    if (cfg_.trace) {
      for (const auto& h : isc->hyperplanes) {
        cfg_.trace->hyperplanes.push_back({h.lambda, h.y, model.fixings, model.objective_bounds});
      }
      for (const auto& c : isc->cuts) cfg_.trace->cuts.push_back(c);
    }
    for (const SolutionVec& x : isc->incumbents) archive_solution(x);
    for (const SolutionVec& x : isc->frontier.probes) archive_solution(x);
    solves_ += isc->frontier.weighted_solves;
    std::size_t added = 0;
    for (const LinearCut& c : isc->accumulated) {
      if (node.pool->insert(c)) {
        model.cuts.push_back(c);
        ++added;
        ++sp_;
      }
    }
    fr = std::move(isc->frontier);
    if (all_integral(*fr)) break;

    const ReoptFn reopt = [&](const LpModel& m) { return relaxation_bound(m, node, true); };
    MpOutcome mp = multipoint_cutting_plane(model, *fr, cfg_.mp, *node.pool, reopt);
    sp_ += mp.sp_cuts;
    mp_ += mp.mp_cuts;
    if (cfg_.trace) {
      for (auto& r : mp.records) cfg_.trace->cuts.push_back(std::move(r));
    }
    if (!mp.frontier) return std::nullopt;
    fr = std::move(mp.frontier);
    if (all_integral(*fr) || (added == 0 && mp.sp_cuts + mp.mp_cuts == 0)) break;
  }
  return fr;
}

bool Engine::dominance_fathom(const LowerBoundSet& lbs) const {
  if (archive_.empty() || lbs.empty()) return false;
  const Point& u1 = archive_.entries().front().y;
  const Point& uk = archive_.entries().back().y;
  // Regions left of u1 or below uk are not covered by any local nadir.
  if (lbs.front().y1 < u1.y1 - kTolGeom) return false;
  if (lbs.back().y2 < uk.y2 - kTolGeom) return false;
  // Nadirs outside the quadrant spanned by the frontier cannot lie in
  // lbs + R^2; leaving them out keeps the test conservative.
  std::vector<Point> nadirs;
  for (const Point& u : local_nadirs(archive_)) {
    if (u.y1 >= lbs.front().y1 - kTolGeom && u.y2 >= lbs.back().y2 - kTolGeom) nadirs.push_back(u);
  }
  return dominance_test(lbs, nadirs);
}

std::vector<Point> Engine::extended_nadirs() const {
  std::vector<Point> out;
  if (archive_.empty()) return out;
  out.push_back({archive_.entries().front().y.y1, kInf});
  const auto loc = local_nadirs(archive_);
  out.insert(out.end(), loc.begin(), loc.end());
  out.push_back({kInf, archive_.entries().back().y.y2});
  return out;
}

NodeState Engine::process_node(Node& node) {
  const std::size_t solves_before = solves_;
  LpModel model = node_model(node);
  node.pool = std::make_shared<CutPool>(node.parent_pool);
  const bool exhaustive = node.depth == 0 || !cfg_.lambda_budget;

  std::optional<Frontier> fr;
  const auto run_mp = [&](const ReoptFn& reopt) {
    MpOutcome mp = multipoint_cutting_plane(model, std::move(*fr), cfg_.mp, *node.pool, reopt);
    sp_ += mp.sp_cuts;
    mp_ += mp.mp_cuts;
    if (cfg_.trace) {
      for (auto& r : mp.records) cfg_.trace->cuts.push_back(std::move(r));
    }
    fr = std::move(mp.frontier);
  };

  switch (cfg_.algo) {
    case Algo::kBb:
      fr = relaxation_bound(model, node, exhaustive);
      break;
    case Algo::kBcMp:
      fr = relaxation_bound(model, node, exhaustive);
      if (fr) run_mp([&](const LpModel& m) { return relaxation_bound(m, node, exhaustive); });
      break;
    case Algo::kBcIsc:
      fr = isc_bound(model, node, exhaustive);
      break;
    case Algo::kBcIscMp:
      fr = isc_bound(model, node, exhaustive);
      if (fr) run_mp([&](const LpModel& m) { return isc_bound(m, node, exhaustive); });
      break;
    case Algo::kCutBranch:
      fr = node.depth == 0 ? cut_branch_root(model, node) : relaxation_bound(model, node, exhaustive);
      break;
  }

  if (cfg_.trace) {
    cfg_.trace->node_solves.push_back(solves_ - solves_before);
    cfg_.trace->node_depths.push_back(node.depth);
  }
  if (!fr) return node.state = NodeState::kInfeasible;
  for (const SolutionVec& x : fr->probes) archive_solution(x);
  node.lbs = fr->lbs;

  if (cfg_.trace && cfg_.trace->nodes.size() < cfg_.trace->max_node_samples) {
    cfg_.trace->nodes.push_back({node.id, node.parent.value_or(node.id), node.lbs, node.fixings, node.bounds});
  }

  if (model.free_count() == 0) {
    std::vector<std::uint8_t> bits(inst_->n);
    for (std::size_t j = 0; j < inst_->n; ++j) bits[j] = static_cast<std::uint8_t>(node.fixings[j]);
    if (model.admits(bits)) archive_solution(make_binary(bits));
    return node.state = NodeState::kIntegrity;
  }
  if (node.lbs.size() == 1 && fr->solutions[0] && fr->solutions[0]->integral) {
    return node.state = NodeState::kIntegrity;
  }
  if (dominance_fathom(node.lbs)) return node.state = NodeState::kDominance;
  return node.state = NodeState::kBranched;
}

std::vector<Node> Engine::branch(Node& node) {
  std::vector<Node> children;
  const auto child_of = [&](const Node& p) {
    Node c;
    c.id = next_id_++;
    c.depth = p.depth + 1;
    c.parent = p.id;
    c.fixings = p.fixings;
    c.bounds = p.bounds;
    c.inherited = p.lbs;
    c.parent_pool = p.pool;
    c.nadirs_seen = p.nadirs_seen;
    return c;
  };

  if (cfg_.epb) {
    std::vector<Point> nadirs;
    for (const Point& u : extended_nadirs()) {
      if (node.lbs.contains(u)) nadirs.push_back(u);
    }
    bool seen = false;
    for (const Point& u : nadirs) seen |= node.nadirs_seen->count(fingerprint(u)) > 0;
    if (!nadirs.empty() && !seen) {
      auto marks = std::make_shared<NadirSet>(*node.nadirs_seen);
      for (const Point& u : nadirs) marks->insert(fingerprint(u));
      std::shared_ptr<const NadirSet> shared = marks;
      for (const Point& u : nadirs) {
        Node c = child_of(node);
        c.nadirs_seen = shared;
        const auto add_bound = [&](int k, double upper) {
          if (upper == kInf) return;
          for (const ObjectiveBound& b : c.bounds) {
            if (b.k == k && b.upper <= upper) return;
          }
          c.bounds.push_back({k, upper});
        };
        add_bound(0, u.y1);
        add_bound(1, u.y2);
        children.push_back(std::move(c));
      }
      return children;
    }
  }

  std::optional<std::size_t> j;
  for (std::size_t v = 0; v < node.fixings.size(); ++v) {
    if (node.fixings[v] < 0) {
      j = v;
      break;
    }
  }
  if (!j) return children;
  for (int v01 : {0, 1}) {
    Node c = child_of(node);
    c.fixings[*j] = static_cast<std::int8_t>(v01);
    children.push_back(std::move(c));
  }
  return children;
}

void Engine::complete_equivalents() {
  const auto pts = archive_.points();
  for (const Point& y : pts) {
    const auto xs = enumerate_preimages(inst_, y);
    archive_.insert(y, xs);
  }
}

SolveReport Engine::run() {
  const auto t0 = Clock::now();
  SolveReport rep;
  NodeQueue queue(cfg_.node_select, cfg_.seed);
  queue.push(make_root());
  while (!queue.empty()) {
    if (seconds_since(t0) >= cfg_.time_limit) {
      rep.timed_out = true;
      break;
    }
    Node node = queue.pop();
    ++rep.nodes_explored;
    if (process_node(node) != NodeState::kBranched) continue;
    for (Node& c : branch(node)) queue.push(std::move(c));
  }
  if (!rep.timed_out && cfg_.complete_equivalents) complete_equivalents();
  for (const auto& e : archive_.entries()) {
    rep.ynd.push_back(e.y);
    rep.efficient.push_back(e.solutions);
  }
  rep.sp_cuts = sp_;
  rep.mp_cuts = mp_;
  rep.weighted_solves = solves_;
  rep.wall_time = seconds_since(t0);
  return rep;
}

SolveReport solve(const Instance& inst, const EngineConfig& cfg) {
  inst.validate();
  Engine e(std::make_shared<const Instance>(inst), cfg);
  return e.run();
}

SolveReport cut_and_branch(const Instance& inst, EngineConfig cfg) {
  cfg.algo = Algo::kCutBranch;
  return solve(inst, cfg);
}

std::vector<SolutionVec> enumerate_preimages(std::shared_ptr<const Instance> inst, const Point& y) {
  std::vector<SolutionVec> out;
  LpModel model(inst);
  model.objective_bounds = {{0, y.y1}, {1, y.y2}};
  const std::size_t n = inst->n;
  std::vector<std::vector<std::int8_t>> stack{model.fixings};
  std::vector<double> cost(n);
  while (!stack.empty()) {
    model.fixings = std::move(stack.back());
    stack.pop_back();
    if (model.free_count() == 0) {
      std::vector<std::uint8_t> bits(n);
      for (std::size_t j = 0; j < n; ++j) bits[j] = static_cast<std::uint8_t>(model.fixings[j]);
      if (model.admits(bits)) out.push_back(make_binary(bits));
      continue;
    }
    LpSession s(model);
    if (!s.feasible()) continue;
    const LpResult v = s.solve({0.5, 0.5}, false);
    if (!v.optimal()) continue;
    std::size_t pick = n;
    if (v.x.integral) {
      // Push as far from the vertex as possible; zero spread means the
      // relaxation is the single point v.
      for (std::size_t j = 0; j < n; ++j) cost[j] = model.fixings[j] >= 0 ? 0.0 : (v.x[j] < 0.5 ? -1.0 : 1.0);
      const auto far = s.minimize(cost);
      double spread = 0.0, widest = 0.0;
      for (std::size_t j = 0; far && j < n; ++j) {
        if (model.fixings[j] >= 0) continue;
        const double d = std::abs((*far)[j] - v.x[j]);
        spread += d;
        if (d > widest + 1e-12) {
          widest = d;
          pick = j;
        }
      }
      if (spread <= 1e-6) {
        const auto bits = v.x.bits();
        if (model.admits(bits)) out.push_back(make_binary(bits));
        continue;
      }
    } else {
      double frac = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (model.fixings[j] >= 0) continue;
        const double f = std::min(v.x[j], 1.0 - v.x[j]);
        if (f > frac + 1e-12) {
          frac = f;
          pick = j;
        }
      }
    }
    if (pick == n) pick = *model.first_free();
    for (int v01 : {1, 0}) {
      auto f = model.fixings;
      f[pick] = static_cast<std::int8_t>(v01);
      stack.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace boblp
