#include <benchmark/benchmark.h>

#include <memory>

#include "boblp/baselines.hpp"
#include "boblp/cuts.hpp"
#include "boblp/engine.hpp"
#include "boblp/lp.hpp"

using namespace boblp;

namespace {

std::shared_ptr<const Instance> make(Family f, std::size_t n, std::uint64_t seed = 1) {
  GeneratorConfig g;
  g.family = f;
  g.n = n;
  g.seed = seed;
  return std::make_shared<const Instance>(generate(g));
}

void BM_WeightedLp(benchmark::State& st) {
  const auto inst = make(Family::kMdmKnapsack, static_cast<std::size_t>(st.range(0)));
  LpModel m(inst);
  for (auto _ : st) {
    LpSession s(m);
    benchmark::DoNotOptimize(s.solve(ScalarDirection(0.5, 0.5), false));
  }
}
BENCHMARK(BM_WeightedLp)->Arg(25)->Arg(50)->Arg(100);

void BM_Dichotomy(benchmark::State& st) {
  const auto inst = make(Family::kKnapsack, static_cast<std::size_t>(st.range(0)));
  LpModel m(inst);
  for (auto _ : st) benchmark::DoNotOptimize(dichotomy_lbs(m));
}
BENCHMARK(BM_Dichotomy)->Arg(25)->Arg(50)->Arg(100);

void BM_CoverSeparation(benchmark::State& st) {
  const auto inst = make(Family::kKnapsack, 50);
  LpModel m(inst);
  const auto fr = dichotomy_lbs(m);
  std::vector<std::vector<double>> targets;
  for (const auto& s : fr->solutions)
    if (s && !s->integral) targets.push_back(s->values);
  for (auto _ : st) benchmark::DoNotOptimize(cover_separate_multi(*inst, 0, targets));
}
BENCHMARK(BM_CoverSeparation);

void BM_BruteForce(benchmark::State& st) {
  const auto inst = make(Family::kSetCovering, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(brute_force(*inst));
}
BENCHMARK(BM_BruteForce)->Arg(12)->Arg(16)->Arg(20);

void BM_Solve(benchmark::State& st) {
  const auto inst = make(Family::kKnapsack, 16);
  EngineConfig cfg;
  cfg.algo = static_cast<Algo>(st.range(0));
  st.SetLabel(std::string(to_string(cfg.algo)));
  for (auto _ : st) benchmark::DoNotOptimize(solve(*inst, cfg));
}
BENCHMARK(BM_Solve)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
