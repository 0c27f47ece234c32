// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: boblp_acceptance [criterion ids...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "boblp/baselines.hpp"
#include "boblp/bench.hpp"
#include "boblp/engine.hpp"
#include "boblp/rng.hpp"

using namespace boblp;

namespace {

// Pinned tolerances.
constexpr double kPointTol = 1e-7;       // ynd comparison
constexpr double kCutViolation = 1e-6;   // required violation of targets
constexpr double kValidTol = 1e-9;       // cut / hyperplane validity slack
constexpr double kLbsTol = 1e-6;         // LBS membership
constexpr double kSweepSeconds = 600.0;
constexpr double kKnapsackSeconds = 900.0;
constexpr double kIscRatio = 0.5;
constexpr double kMpRatio = 0.8;
constexpr double kRhoLo = -0.95, kRhoHi = -0.89;
constexpr std::size_t kSweepInstances = 220;
constexpr std::size_t kLbsSamples = 50;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// Full enumeration of feasible 0/1 points, independent of the library.

struct Feasible {
  std::vector<std::uint32_t> x;
  std::vector<double> z1, z2;
};

Feasible enumerate(const Instance& inst) {
  Feasible f;
  const std::size_t n = inst.n;
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < inst.m; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (x >> j & 1u) s += inst.a[i * n + j];
      switch (inst.senses[i]) {
        case Sense::kLessEqual: ok = s <= inst.b[i] + 1e-9; break;
        case Sense::kGreaterEqual: ok = s >= inst.b[i] - 1e-9; break;
        case Sense::kEqual: ok = std::abs(s - inst.b[i]) <= 1e-9; break;
      }
    }
    if (!ok) continue;
    double a = 0, b = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (x >> j & 1u) a += inst.c1[j], b += inst.c2[j];
    f.x.push_back(x);
    f.z1.push_back(a);
    f.z2.push_back(b);
  }
  return f;
}

struct Restriction {
  std::uint32_t mask = 0, value = 0;
  std::vector<ObjectiveBound> bounds;

  Restriction(const std::vector<std::int8_t>& fix, std::vector<ObjectiveBound> b) : bounds(std::move(b)) {
    for (std::size_t j = 0; j < fix.size(); ++j) {
      if (fix[j] < 0) continue;
      mask |= 1u << j;
      if (fix[j] == 1) value |= 1u << j;
    }
  }
  bool admits(const Feasible& f, std::size_t k) const {
    if ((f.x[k] & mask) != value) return false;
    for (const auto& ob : bounds)
      if ((ob.k == 0 ? f.z1[k] : f.z2[k]) > ob.upper + 1e-9) return false;
    return true;
  }
};

// Point p lies in conv-staircase region lbs + R^2_>=: above every segment
// line within its y1-span and inside the end rays.
bool in_region(const LowerBoundSet& lbs, double y1, double y2, double tol) {
  const auto& p = lbs.points();
  if (p.empty()) return false;
  if (y1 < p.front().y1 - tol || y2 < p.back().y2 - tol) return false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double a1 = p[i].y1, a2 = p[i].y2, b1 = p[i + 1].y1, b2 = p[i + 1].y2;
    // Outward normal of the segment towards the lower-left.
    const double n1 = a2 - b2, n2 = b1 - a1;
    if (n1 * (y1 - a1) + n2 * (y2 - a2) < -tol * std::hypot(n1, n2)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

const Family kSweepFamilies[] = {Family::kKnapsack, Family::kMdmKnapsack, Family::kSetCovering,
                                 Family::kSetPartitioning};
const Algo kAlgos[] = {Algo::kBb, Algo::kBcMp, Algo::kBcIsc, Algo::kBcIscMp, Algo::kCutBranch};
const std::optional<std::size_t> kLambdas[] = {std::nullopt, 2, 3};

std::vector<Instance> sweep_instances() {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < kSweepInstances; ++i) {
    GeneratorConfig g;
    g.family = kSweepFamilies[i % 4];
    g.n = 6 + (i / 4) % 11;
    g.seed = 1000 + i;
    out.push_back(generate(g));
  }
  return out;
}

std::vector<RunSpec> sweep_specs() {
  std::vector<RunSpec> specs;
  for (Algo a : kAlgos)
    for (bool epb : {false, true})
      for (auto lam : kLambdas) {
        RunSpec s;
        s.algo = std::string(to_string(a));
        s.epb = epb;
        s.lambda = lam;
        specs.push_back(s);
      }
  RunSpec eps;
  eps.algo = "epsilon";
  specs.push_back(eps);
  return specs;
}

BenchRow row_of(const Instance& inst, const RunSpec& s, const SolveReport& r) {
  BenchRow row;
  row.instance = inst.name;
  row.n = inst.n;
  row.m = inst.m;
  row.algo = s.algo;
  row.epb = s.epb;
  row.lambda = s.lambda;
  row.time_s = r.wall_time;
  row.timed_out = r.timed_out;
  row.nodes = r.nodes_explored;
  row.sp_cuts = r.sp_cuts;
  row.mp_cuts = r.mp_cuts;
  row.ynd_count = r.ynd.size();
  return row;
}

std::string csv_without_time(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows, false);
  std::istringstream is(os.str());
  std::string out;
  for (std::string line; std::getline(is, line);) {
    std::vector<std::string> cols;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (k) out += ',';
      if (k != 6) out += cols[k];
    }
    out += '\n';
  }
  return out;
}

bool same_front(const SolveReport& a, const SolveReport& b) {
  if (a.ynd.size() != b.ynd.size()) return false;
  for (std::size_t k = 0; k < a.ynd.size(); ++k)
    if (!near(a.ynd[k], b.ynd[k], kPointTol)) return false;
  return true;
}

bool same_efficient(const SolveReport& a, const SolveReport& b) {
  for (std::size_t k = 0; k < a.ynd.size(); ++k) {
    std::set<std::vector<std::uint8_t>> A, B;
    for (const auto& x : a.efficient[k]) A.insert(x.bits());
    for (const auto& x : b.efficient[k]) B.insert(x.bits());
    if (A != B) return false;
  }
  return true;
}

struct HyperKey {
  double l1, l2, y;
  std::uint32_t mask, value;
  std::vector<std::pair<int, double>> bounds;
  auto operator<=>(const HyperKey&) const = default;
};

// Criteria 1-5 and 10 share the sweep.
void run_sweep(const std::set<int>& want) {
  const auto t0 = Clock::now();
  const auto instances = sweep_instances();
  const auto specs = sweep_specs();
  std::vector<BenchRow> rows;

  std::size_t runs = 0, front_bad = 0, eff_bad = 0, eps_bad = 0, iter_bad = 0;
  std::size_t cuts_checked = 0, cuts_invalid = 0, cuts_weak = 0;
  std::size_t hyper_checked = 0, hyper_invalid = 0;
  std::vector<std::string> first_problem;
  struct Sample {
    std::size_t inst;
    SolveTrace::NodeSample node;
  };
  std::vector<Sample> pool;
  double solve_time = 0;

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    const auto ref = brute_force(inst);
    const Feasible feas = enumerate(inst);
    std::unordered_set<CutKey, CutKeyHash> seen_cuts;
    std::set<HyperKey> seen_hyper;
    for (const RunSpec& s : specs) {
      const auto ts = Clock::now();
      SolveReport r;
      SolveTrace trace;
      if (s.algo == "epsilon") {
        r = epsilon_constraint(inst);
        if (!same_front(r, ref)) ++eps_bad;
        if (r.iterations != ref.ynd.size() + 1) ++iter_bad;
      } else {
        EngineConfig cfg;
        cfg.algo = parse_algo(s.algo);
        cfg.epb = s.epb;
        cfg.lambda_budget = s.lambda;
        cfg.trace = &trace;
        r = solve(inst, cfg);
        ++runs;
        const bool fr = same_front(r, ref);
        const bool ef = fr && same_efficient(r, ref);
        if (!fr) ++front_bad;
        if (fr && !ef) ++eff_bad;
        if ((!fr || !ef) && first_problem.size() < 3)
          first_problem.push_back(inst.name + " " + s.algo + (s.epb ? "+epb" : "") +
                                  (s.lambda ? " l=" + std::to_string(*s.lambda) : ""));
      }
      solve_time += seconds_since(ts);
      rows.push_back(row_of(inst, s, r));

      for (const CutRecord& rec : trace.cuts) {
        for (const auto& x : rec.targets)
          if (!(rec.cut.violation(x) > kCutViolation)) ++cuts_weak;
        if (!seen_cuts.insert(rec.cut.key()).second) continue;
        ++cuts_checked;
        for (std::uint32_t x : feas.x) {
          double lhs = 0;
          for (std::size_t j = 0; j < inst.n; ++j)
            if (x >> j & 1u) lhs += rec.cut.coeffs[j];
          if (lhs > rec.cut.rhs + kValidTol) {
            ++cuts_invalid;
            break;
          }
        }
      }
      for (const auto& h : trace.hyperplanes) {
        const Restriction res(h.fixings, h.bounds);
        HyperKey key{h.lambda.l1, h.lambda.l2, h.lambda.dot(h.y), res.mask, res.value, {}};
        for (const auto& b : h.bounds) key.bounds.emplace_back(b.k, b.upper);
        if (!seen_hyper.insert(key).second) continue;
        ++hyper_checked;
        const double rhs = h.lambda.dot(h.y);
        const double slack = kValidTol * (1 + std::abs(rhs));
        for (std::size_t k = 0; k < feas.x.size(); ++k) {
          if (!res.admits(feas, k)) continue;
          if (h.lambda.l1 * feas.z1[k] + h.lambda.l2 * feas.z2[k] < rhs - slack) {
            ++hyper_invalid;
            break;
          }
        }
      }
      // Keep one node per run as a sampling candidate, spread over depths.
      if (!trace.nodes.empty()) pool.push_back({i, trace.nodes[(runs * 7) % trace.nodes.size()]});
    }
  }
  const double sweep_s = seconds_since(t0);

  if (want.count(1)) {
    std::string d = fmt("%zu instances, %zu engine runs, %zu ynd mismatches, %zu efficient-set mismatches, %.1fs",
                        instances.size(), runs, front_bad, eff_bad, solve_time);
    for (const auto& p : first_problem) d += "; " + p;
    report(1, "exactness sweep", instances.size() >= 200 && front_bad == 0 && eff_bad == 0 && solve_time < kSweepSeconds,
           d);
  }
  if (want.count(2))
    report(2, "epsilon-constraint agreement", eps_bad == 0 && iter_bad == 0,
           fmt("%zu instances, %zu ynd mismatches, %zu iteration-count mismatches", instances.size(), eps_bad, iter_bad));
  if (want.count(3))
    report(3, "cut validity", cuts_checked > 0 && cuts_invalid == 0 && cuts_weak == 0,
           fmt("%zu distinct cuts checked, %zu invalid, %zu target violations <= %.0e", cuts_checked, cuts_invalid,
               cuts_weak, kCutViolation));
  if (want.count(4))
    report(4, "ISC hyperplane validity", hyper_checked > 0 && hyper_invalid == 0,
           fmt("%zu distinct hyperplanes checked, %zu invalid", hyper_checked, hyper_invalid));

  if (want.count(5)) {
    SplitMix64 rng(20240501);
    std::size_t checked = 0, bad = 0, points = 0;
    std::map<std::size_t, Feasible> cache;
    for (std::size_t s = 0; s < kLbsSamples && !pool.empty(); ++s) {
      const auto& smp = pool[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1))];
      auto it = cache.find(smp.inst);
      if (it == cache.end()) it = cache.emplace(smp.inst, enumerate(instances[smp.inst])).first;
      const Feasible& f = it->second;
      const Restriction res(smp.node.fixings, smp.node.bounds);
      ++checked;
      for (std::size_t k = 0; k < f.x.size(); ++k) {
        if (!res.admits(f, k)) continue;
        ++points;
        if (!in_region(smp.node.lbs, f.z1[k], f.z2[k], kLbsTol)) {
          ++bad;
          break;
        }
      }
    }
    report(5, "LBS validity", checked == kLbsSamples && bad == 0,
           fmt("%zu nodes sampled, %zu feasible points checked, %zu violating nodes", checked, points, bad));
  }

  if (want.count(10)) {
    const auto t1 = Clock::now();
    const auto again = run_bench(instances, specs);
    const std::string a = csv_without_time(rows), b = csv_without_time(again);
    std::size_t diff = 0;
    {
      std::istringstream sa(a), sb(b);
      std::string la, lb;
      while (std::getline(sa, la) && std::getline(sb, lb)) diff += la != lb;
    }
    report(10, "determinism", a == b,
           fmt("%zu rows, %zu differing lines outside time_s, second pass %.1fs", rows.size(), diff,
               seconds_since(t1)));
  }
  std::printf("     sweep wall time %.1fs\n", sweep_s);
}

// Criteria 6 and 7. The whole section shares one wall-clock budget; bb and
// bc-mp run first so that criterion 7 is always complete.
void run_knapsack(const std::set<int>& want) {
  const auto t0 = Clock::now();
  const auto remaining = [&] { return std::max(0.0, kKnapsackSeconds - seconds_since(t0)); };
  constexpr int kCount = 30;
  std::vector<Instance> suite;
  for (int i = 0; i < kCount; ++i) {
    GeneratorConfig g;
    g.family = Family::kKnapsack;
    g.n = 25;
    g.seed = 5000 + static_cast<std::uint64_t>(i);
    suite.push_back(generate(g));
  }
  double bb = 0, isc = 0, mp = 0;
  std::size_t sp_cuts = 0, mp_cuts = 0, mismatched = 0, timeouts = 0, isc_done = 0;
  std::vector<SolveReport> ref;
  for (const Instance& inst : suite) {
    EngineConfig c;
    c.time_limit = remaining();
    ref.push_back(solve(inst, c));
    c.algo = Algo::kBcMp;
    c.time_limit = remaining();
    const auto r_mp = solve(inst, c);
    timeouts += ref.back().timed_out + r_mp.timed_out;
    bb += static_cast<double>(ref.back().nodes_explored);
    mp += static_cast<double>(r_mp.nodes_explored);
    sp_cuts += r_mp.sp_cuts;
    mp_cuts += r_mp.mp_cuts;
    mismatched += !same_front(ref.back(), r_mp);
  }
  const double mp_secs = seconds_since(t0);
  std::string slow;
  for (std::size_t i = 0; i < suite.size() && remaining() > 0; ++i) {
    EngineConfig c;
    c.algo = Algo::kBcIsc;
    c.epb = true;
    c.time_limit = remaining();
    const auto t = Clock::now();
    const auto r = solve(suite[i], c);
    if (r.timed_out) {
      ++timeouts;
      slow = suite[i].name + fmt(" unfinished after %.0fs", seconds_since(t));
      break;
    }
    ++isc_done;
    isc += static_cast<double>(r.nodes_explored);
    mismatched += !same_front(ref[i], r);
  }
  bb /= kCount;
  mp /= kCount;
  if (isc_done) isc /= static_cast<double>(isc_done);
  const double secs = seconds_since(t0);
  if (want.count(6)) {
    const bool ok = isc_done == suite.size() && isc <= kIscRatio * bb && mp <= kMpRatio * bb && timeouts == 0 &&
                    secs < kKnapsackSeconds && mismatched == 0;
    std::string d = fmt("mean nodes bb %.1f, bc-mp %.1f (%.2fx, need <= %.1f), bc-isc+epb %.1f over %zu/%d instances "
                        "(%.2fx, need <= %.1f); %zu ynd mismatches; %.1fs (bb+bc-mp %.1fs, budget %.0fs)",
                        bb, mp, mp / bb, kMpRatio, isc, isc_done, kCount, isc / bb, kIscRatio, mismatched, secs, mp_secs,
                        kKnapsackSeconds);
    if (!slow.empty()) d += "; " + slow;
    report(6, "node reduction", ok, d);
  }
  if (want.count(7))
    report(7, "multi-point cut dominance", mp_cuts >= sp_cuts,
           fmt("bc-mp totals over %d instances: mp_cuts %zu, sp_cuts %zu", kCount, mp_cuts, sp_cuts));
}

// Criterion 8.
void run_lambda(const std::set<int>&) {
  std::size_t n2 = 0, n4 = 0, nx = 0, over_budget = 0, ynd_bad = 0;
  for (int i = 0; i < 10; ++i) {
    GeneratorConfig g;
    g.family = Family::kSetCovering;
    g.n = 30;
    g.seed = 7000 + static_cast<std::uint64_t>(i);
    const Instance inst = generate(g);
    SolveReport rs[3];
    const std::optional<std::size_t> budgets[] = {2, 4, std::nullopt};
    for (int k = 0; k < 3; ++k) {
      SolveTrace trace;
      EngineConfig c;
      c.lambda_budget = budgets[k];
      c.trace = &trace;
      rs[k] = solve(inst, c);
      if (budgets[k]) {
        for (std::size_t q = 0; q < trace.node_solves.size(); ++q)
          if (trace.node_depths[q] > 0 && trace.node_solves[q] > *budgets[k]) ++over_budget;
      }
    }
    n2 += rs[0].nodes_explored;
    n4 += rs[1].nodes_explored;
    nx += rs[2].nodes_explored;
    ynd_bad += !same_front(rs[0], rs[2]) || !same_front(rs[1], rs[2]);
  }
  report(8, "lambda-budget trend", n2 >= n4 && n4 >= nx && over_budget == 0 && ynd_bad == 0,
         fmt("total nodes lambda=2 %zu, lambda=4 %zu, exhaustive %zu; %zu non-root nodes over budget; %zu ynd mismatches",
             n2, n4, nx, over_budget, ynd_bad));
}

// Criterion 9.
void run_rho(const std::set<int>&) {
  const Family fams[] = {Family::kKnapsack, Family::kMdmKnapsack, Family::kSetCovering,
                         Family::kSetPartitioning, Family::kAssignment, Family::kUflp};
  double lo = 1, hi = -1;
  std::size_t count = 0, out = 0;
  for (Family f : fams)
    for (std::size_t n : {50, 100, 200})
      for (std::uint64_t s = 0; s < 10; ++s) {
        GeneratorConfig g;
        g.family = f;
        g.n = n;
        g.seed = 9000 + s;
        const Instance inst = generate(g);
        if (inst.n < 50) continue;
        // Independent Pearson correlation.
        const double k = static_cast<double>(inst.n);
        double m1 = 0, m2 = 0;
        for (std::size_t j = 0; j < inst.n; ++j) m1 += inst.c1[j] / k, m2 += inst.c2[j] / k;
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t j = 0; j < inst.n; ++j) {
          sxy += (inst.c1[j] - m1) * (inst.c2[j] - m2);
          sxx += (inst.c1[j] - m1) * (inst.c1[j] - m1);
          syy += (inst.c2[j] - m2) * (inst.c2[j] - m2);
        }
        const double rho = sxy / std::sqrt(sxx * syy);
        lo = std::min(lo, rho);
        hi = std::max(hi, rho);
        ++count;
        out += rho < kRhoLo || rho > kRhoHi;
      }
  report(9, "generator correlation", count > 0 && out == 0,
         fmt("%zu instances (6 families, n in {50,100,200}), rho in [%.4f, %.4f], %zu outside [%.2f, %.2f]", count, lo,
             hi, out, kRhoLo, kRhoHi));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> want;
  for (int i = 1; i < argc; ++i) want.insert(std::atoi(argv[i]));
  if (want.empty())
    for (int i = 1; i <= 10; ++i) want.insert(i);
  const auto any = [&](std::initializer_list<int> ids) {
    return std::any_of(ids.begin(), ids.end(), [&](int i) { return want.count(i) > 0; });
  };
  if (any({9})) run_rho(want);
  if (any({1, 2, 3, 4, 5, 10})) run_sweep(want);
  if (any({6, 7})) run_knapsack(want);
  if (any({8})) run_lambda(want);
  std::printf("summary: %d of %zu criteria failed\n", failures, want.size());
  return failures ? 1 : 0;
}
