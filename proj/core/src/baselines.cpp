#include "boblp/baselines.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>

#include "boblp/oracle.hpp"

namespace boblp {

namespace {

using Clock = std::chrono::steady_clock;

bool row_ok(double lhs, Sense s, double b) {
  switch (s) {
    case Sense::kLessEqual: return lhs <= b + kTolFeas;
    case Sense::kGreaterEqual: return lhs >= b - kTolFeas;
    case Sense::kEqual: return std::abs(lhs - b) <= kTolFeas;
  }
  return false;
}

SolveReport to_report(const IncumbentArchive& arch, Clock::time_point t0) {
  SolveReport rep;
  for (const auto& e : arch.entries()) {
    rep.ynd.push_back(e.y);
    rep.efficient.push_back(e.solutions);
  }
  rep.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

}  // namespace

SolveReport brute_force(const Instance& inst) {
  inst.validate();
  if (inst.n > kBruteForceMaxN) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "brute force limited to n <= " + std::to_string(kBruteForceMaxN) + " (got " +
                    std::to_string(inst.n) + ")");
  }
  const auto t0 = Clock::now();
  const std::size_t n = inst.n, m = inst.m;
  std::vector<std::uint8_t> bits(n, 0);
  std::vector<double> lhs(m, 0.0);
  IncumbentArchive arch;

  const auto visit = [&] {
    for (std::size_t i = 0; i < m; ++i) {
      if (!row_ok(lhs[i], inst.senses[i], inst.b[i])) return;
    }
    // Re-check exactly: the running sums may drift on fractional data.
    if (!is_feasible_bits(inst, bits)) return;
    const SolutionVec x = make_binary(bits);
    arch.insert(evaluate(inst, x), x);
  };

  visit();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    bits[j] ^= 1;
    const double sign = bits[j] ? 1.0 : -1.0;
    for (std::size_t i = 0; i < m; ++i) lhs[i] += sign * inst.a[i * n + j];
    visit();
  }
  SolveReport rep = to_report(arch, t0);
  rep.iterations = static_cast<std::size_t>(total);
  return rep;
}

void EpsilonConfig::validate() const {
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon step must be > 0");
  if (!(time_limit >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "time limit must be >= 0");
}

SolveReport epsilon_constraint(const Instance& inst, const EpsilonConfig& cfg) {
  inst.validate();
  cfg.validate();
  const bool whole_c2 =
      std::all_of(inst.c2.begin(), inst.c2.end(), [](double v) { return v == std::round(v); });
  if (cfg.delta == 1.0 && !whole_c2) {
    throw Error(ErrorCode::kNonIntegralObjective, "epsilon step 1 requires integral c2; pass an explicit step");
  }
  const auto t0 = Clock::now();
  auto shared = std::make_shared<const Instance>(inst);
  IncumbentArchive arch;
  std::size_t iterations = 0;
  double e = std::numeric_limits<double>::infinity();
  bool timed_out = false;
  for (;;) {
    if (std::chrono::duration<double>(Clock::now() - t0).count() >= cfg.time_limit) {
      timed_out = true;
      break;
    }
    ++iterations;
    LpModel model(shared);
    if (std::isfinite(e)) model.objective_bounds.push_back({1, e});
    IlpLimits limits;
    limits.time_limit = std::max(0.0, cfg.time_limit - std::chrono::duration<double>(Clock::now() - t0).count());
    const auto x = ilp_lexmin(model, 0, limits);
    if (!x) {
      timed_out = std::chrono::duration<double>(Clock::now() - t0).count() >= cfg.time_limit;
      break;
    }
    const Point y = evaluate(inst, *x);
    arch.insert(y, *x);
    e = y.y2 - cfg.delta;
  }
  SolveReport rep = to_report(arch, t0);
  rep.iterations = iterations;
  rep.timed_out = timed_out;
  return rep;
}

}  // namespace boblp
