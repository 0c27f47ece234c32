#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "boblp/cuts.hpp"
#include "boblp/geometry.hpp"
#include "boblp/lp.hpp"
#include "boblp/oracle.hpp"
#include "boblp/rng.hpp"

namespace boblp {

enum class Algo : std::uint8_t { kBb, kBcMp, kBcIsc, kBcIscMp, kCutBranch };
enum class NodeSelect : std::uint8_t { kDepth, kBreadth, kRandom };

std::string_view to_string(Algo a);
Algo parse_algo(std::string_view s);
std::string_view to_string(NodeSelect s);
NodeSelect parse_node_select(std::string_view s);

/// Audit record of a solve, filled only when EngineConfig::trace is set.
struct SolveTrace {
  struct Hyperplane {
    ScalarDirection lambda;
    Point y;
    std::vector<std::int8_t> fixings;
    std::vector<ObjectiveBound> bounds;
  };
  struct NodeSample {
    std::size_t id = 0;
    std::size_t parent = 0;
    LowerBoundSet lbs;
    std::vector<std::int8_t> fixings;
    std::vector<ObjectiveBound> bounds;
  };

  std::vector<CutRecord> cuts;
  std::vector<Hyperplane> hyperplanes;
  std::vector<NodeSample> nodes;
  std::size_t max_node_samples = 64;
  /// Weighted solves per evaluated node (index = evaluation order).
  std::vector<std::size_t> node_solves;
  std::vector<std::size_t> node_depths;
};

struct EngineConfig {
  Algo algo = Algo::kBb;
  bool epb = false;
  std::optional<std::size_t> lambda_budget;
  LambdaStrategy lambda_strategy = LambdaStrategy::kDichotomic;
  NodeSelect node_select = NodeSelect::kBreadth;
  double time_limit = 3600.0;
  std::uint64_t seed = 0;
  MpConfig mp;
  IlpLimits ilp_limits{0, std::nullopt};
  /// Enumerate every equivalent solution of each nondominated point after
  /// the tree (not counted as nodes).
  bool complete_equivalents = true;
  const IlpOracle* oracle = nullptr;
  SolveTrace* trace = nullptr;

  void validate() const;
};

struct SolveReport {
  std::vector<Point> ynd;
  /// Aligned with ynd.
  std::vector<std::vector<SolutionVec>> efficient;
  std::size_t nodes_explored = 0;
  std::size_t sp_cuts = 0;
  std::size_t mp_cuts = 0;
  std::size_t weighted_solves = 0;
  /// Iterations of an iterative baseline (epsilon-constraint); 0 otherwise.
  std::size_t iterations = 0;
  double wall_time = 0.0;
  bool timed_out = false;
};

enum class NodeState : std::uint8_t { kOpen, kInfeasible, kIntegrity, kDominance, kBranched };

std::string_view to_string(NodeState s);

/// Rounded coordinates; INT64_MAX stands for +inf.
using NadirKey = std::pair<std::int64_t, std::int64_t>;
using NadirSet = std::set<NadirKey>;

NadirKey fingerprint(const Point& u);

struct Node {
  std::size_t id = 0;
  std::size_t depth = 0;
  std::optional<std::size_t> parent;
  std::vector<std::int8_t> fixings;
  std::vector<ObjectiveBound> bounds;
  LowerBoundSet inherited;
  LowerBoundSet lbs;
  std::shared_ptr<const CutPool> parent_pool;
  std::shared_ptr<CutPool> pool;
  std::shared_ptr<const NadirSet> nadirs_seen;
  NodeState state = NodeState::kOpen;
};

/// Open nodes under a selection rule. Random selection is seeded.
class NodeQueue {
 public:
  NodeQueue(NodeSelect rule, std::uint64_t seed) : rule_(rule), rng_(seed) {}
  void push(Node node) { nodes_.push_back(std::move(node)); }
  Node pop();
  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }

 private:
  NodeSelect rule_;
  SplitMix64 rng_;
  std::deque<Node> nodes_;
};

class Engine {
 public:
  Engine(std::shared_ptr<const Instance> inst, EngineConfig cfg);

  Node make_root();
  /// Bounds, cuts, archive updates and fathoming. Sets node.state and
  /// node.lbs.
  NodeState process_node(Node& node);
  std::vector<Node> branch(Node& node);
  SolveReport run();

  const IncumbentArchive& archive() const { return archive_; }
  IncumbentArchive& archive() { return archive_; }
  /// Local nadirs of the archive plus the two outer corners
  /// (u_1.y1, +inf) and (+inf, u_k.y2).
  std::vector<Point> extended_nadirs() const;

 private:
  std::shared_ptr<const Instance> inst_;
  EngineConfig cfg_;
  IncumbentArchive archive_;
  std::size_t next_id_ = 0;
  std::size_t sp_ = 0, mp_ = 0, solves_ = 0;

  LpModel node_model(const Node& node) const;
  std::optional<Frontier> relaxation_bound(const LpModel& model, const Node& node, bool exhaustive);
  std::optional<Frontier> isc_bound(const LpModel& model, const Node& node, bool exhaustive);
  std::optional<Frontier> cut_branch_root(LpModel& model, Node& node);
  void archive_solution(const SolutionVec& x);
  bool dominance_fathom(const LowerBoundSet& lbs) const;
  void complete_equivalents();
};

SolveReport solve(const Instance& inst, const EngineConfig& cfg);
SolveReport cut_and_branch(const Instance& inst, EngineConfig cfg);

/// All feasible binary x with z(x) <= y componentwise, by LP-pruned
/// enumeration. For a nondominated y these are exactly its preimages.
std::vector<SolutionVec> enumerate_preimages(std::shared_ptr<const Instance> inst, const Point& y);

}  // namespace boblp
