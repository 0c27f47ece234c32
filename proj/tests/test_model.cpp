#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "boblp/model.hpp"
#include "boblp/rng.hpp"

using namespace boblp;

namespace {

Instance tiny_knapsack() {
  return parse_instance("2 1\n-1 0\n0 -1\n3 4 <= 6\n", "tiny");
}

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no boblp::Error thrown";
  return ErrorCode::kInvalidArgument;
}

// Plain two-pass Pearson, independent of the library helper.
double corr(const std::vector<double>& u, const std::vector<double>& v) {
  const double n = static_cast<double>(u.size());
  const double mu = std::accumulate(u.begin(), u.end(), 0.0) / n;
  const double mv = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double suv = 0, suu = 0, svv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suv += (u[i] - mu) * (v[i] - mv);
    suu += (u[i] - mu) * (u[i] - mu);
    svv += (v[i] - mv) * (v[i] - mv);
  }
  return suv / std::sqrt(suu * svv);
}

}  // namespace

TEST(Parse, TwoVariableKnapsack) {
  const Instance inst = tiny_knapsack();
  EXPECT_EQ(inst.n, 2u);
  EXPECT_EQ(inst.m, 1u);
  EXPECT_EQ(inst.c1, (std::vector<double>{-1, 0}));
  EXPECT_EQ(inst.c2, (std::vector<double>{0, -1}));
  EXPECT_EQ(inst.a, (std::vector<double>{3, 4}));
  EXPECT_EQ(inst.senses.front(), Sense::kLessEqual);
  EXPECT_EQ(inst.b.front(), 6.0);
}

TEST(Parse, CommentsAndBlankLinesIgnored) {
  const Instance inst = parse_instance("# header\n\n2 1\n-1 0 # z1\n0 -1\n\n3 4 <= 6\n");
  EXPECT_EQ(inst.n, 2u);
  EXPECT_EQ(inst.b.front(), 6.0);
}

TEST(Parse, Errors) {
  EXPECT_EQ(code_of([] { parse_instance(""); }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(code_of([] { parse_instance("2 1\n-1 0\n0 -1\n3 4 5 <= 6\n"); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] { parse_instance("2 1\n-1 0\n0 -1\n3 4 << 6\n"); }), ErrorCode::kUnknownSense);
  EXPECT_EQ(code_of([] { parse_instance("2 1\n-1 nan\n0 -1\n3 4 <= 6\n"); }), ErrorCode::kNonFiniteValue);
  EXPECT_EQ(code_of([] { parse_instance("2 2\n-1 0\n0 -1\n3 4 <= 6\n"); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] { parse_instance("x 1\n"); }), ErrorCode::kMalformedHeader);
}

TEST(Parse, AllSenses) {
  const Instance inst = parse_instance("2 3\n1 1\n1 1\n1 1 <= 2\n1 0 >= 0\n0 1 = 1\n");
  EXPECT_EQ(inst.senses, (std::vector<Sense>{Sense::kLessEqual, Sense::kGreaterEqual, Sense::kEqual}));
}

TEST(Parse, ZeroRows) {
  const Instance inst = parse_instance("1 0\n1\n-1\n");
  EXPECT_EQ(inst.m, 0u);
}

TEST(Serialize, RoundTripGenerated) {
  for (Family f : {Family::kKnapsack, Family::kMdmKnapsack, Family::kSetCovering, Family::kSetPartitioning,
                   Family::kAssignment, Family::kUflp}) {
    GeneratorConfig cfg;
    cfg.family = f;
    cfg.n = f == Family::kAssignment ? 9 : 12;
    cfg.seed = 11;
    const Instance inst = generate(cfg);
    const Instance back = parse_instance(serialize_instance(inst), inst.name);
    EXPECT_EQ(back, inst) << to_string(f);
  }
}

TEST(Serialize, FractionalCoefficientsRoundTrip) {
  const Instance inst = parse_instance("2 1\n0.1 -2.5\n1e-3 3\n0.3 0.7 >= 0.2\n");
  EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
}

TEST(Evaluate, Examples) {
  const Instance inst = tiny_knapsack();
  EXPECT_EQ(evaluate(inst, make_binary(std::vector<std::uint8_t>{1, 0})), (Point{-1, 0}));
  EXPECT_EQ(evaluate(inst, make_binary(std::vector<std::uint8_t>{0, 0})), (Point{0, 0}));
  const Instance other = parse_instance("2 0\n2 3\n5 1\n");
  EXPECT_EQ(evaluate(other, make_binary(std::vector<std::uint8_t>{1, 1})), (Point{5, 6}));
}

TEST(Feasibility, Examples) {
  const Instance inst = parse_instance("2 1\n0 0\n0 0\n3 4 <= 6\n");
  EXPECT_TRUE(is_feasible(inst, make_binary(std::vector<std::uint8_t>{1, 0})));
  EXPECT_FALSE(is_feasible(inst, make_binary(std::vector<std::uint8_t>{1, 1})));
  const Instance eq = parse_instance("2 1\n0 0\n0 0\n1 1 = 1\n");
  EXPECT_FALSE(is_feasible(eq, make_binary(std::vector<std::uint8_t>{0, 0})));
  EXPECT_EQ(code_of([&] { is_feasible(inst, SolutionVec({0.5, 0.0})); }), ErrorCode::kNonIntegralInput);
}

TEST(SolutionVec, IntegralityFlag) {
  EXPECT_TRUE(SolutionVec({1.0, 0.0, 1.0 - 5e-7}).integral);
  EXPECT_FALSE(SolutionVec({1.0, 0.5}).integral);
  EXPECT_FALSE(SolutionVec({2e-6}).integral);
  EXPECT_EQ(SolutionVec({1.0 - 1e-7, 1e-7}).bits(), (std::vector<std::uint8_t>{1, 0}));
}

TEST(Instance, ValidateRejectsBadDimensions) {
  Instance inst = tiny_knapsack();
  inst.c2.pop_back();
  EXPECT_EQ(code_of([&] { inst.validate(); }), ErrorCode::kDimensionMismatch);
  Instance inf = tiny_knapsack();
  inf.b[0] = INFINITY;
  EXPECT_EQ(code_of([&] { inf.validate(); }), ErrorCode::kNonFiniteValue);
}

TEST(Generate, SetCoveringShape) {
  GeneratorConfig cfg;
  cfg.family = Family::kSetCovering;
  cfg.n = 20;
  cfg.seed = 7;
  const Instance inst = generate(cfg);
  EXPECT_GE(inst.m, 2u);
  EXPECT_LE(inst.m, 6u);
  for (double v : inst.a) EXPECT_TRUE(v == 0.0 || v == 1.0);
  for (Sense s : inst.senses) EXPECT_EQ(s, Sense::kGreaterEqual);
}

TEST(Generate, SmallestKnapsack) {
  GeneratorConfig cfg;
  cfg.n = 1;
  const Instance inst = generate(cfg);
  EXPECT_EQ(inst.n, 1u);
  EXPECT_EQ(inst.m, 1u);
  EXPECT_EQ(inst.senses.front(), Sense::kLessEqual);
}

TEST(Generate, KnapsackCorrelation) {
  GeneratorConfig cfg;
  cfg.n = 100;
  cfg.seed = 3;
  const Instance inst = generate(cfg);
  const double rho = corr(inst.c1, inst.c2);
  EXPECT_GE(rho, -0.95);
  EXPECT_LE(rho, -0.89);
  EXPECT_NEAR(pearson(inst.c1, inst.c2), rho, 1e-12);
}

TEST(Generate, KnapsackRanges) {
  GeneratorConfig cfg;
  cfg.n = 60;
  cfg.seed = 4;
  const Instance inst = generate(cfg);
  for (std::size_t j = 0; j < inst.n; ++j) {
    // Profits are negated for minimization.
    EXPECT_GE(-inst.c1[j], 1.0);
    EXPECT_LE(-inst.c1[j], 100.0);
    EXPECT_GE(inst.a[j], 1.0);
    EXPECT_LE(inst.a[j], 100.0);
    EXPECT_EQ(inst.c1[j], std::round(inst.c1[j]));
    EXPECT_EQ(inst.c2[j], std::round(inst.c2[j]));
  }
}

TEST(Generate, Deterministic) {
  GeneratorConfig cfg;
  cfg.family = Family::kSetPartitioning;
  cfg.n = 30;
  cfg.seed = 99;
  EXPECT_EQ(serialize_instance(generate(cfg)), serialize_instance(generate(cfg)));
  GeneratorConfig other = cfg;
  other.seed = 100;
  EXPECT_NE(serialize_instance(generate(cfg)), serialize_instance(generate(other)));
}

TEST(Generate, CoveringRowsNonEmpty) {
  for (Family f : {Family::kSetCovering, Family::kSetPartitioning}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      GeneratorConfig cfg;
      cfg.family = f;
      cfg.n = 10 + seed % 25;
      cfg.seed = seed;
      const Instance inst = generate(cfg);
      for (std::size_t i = 0; i < inst.m; ++i) {
        double nz = 0;
        for (double v : inst.row(i)) nz += v != 0.0;
        EXPECT_GE(nz, 1.0);
      }
    }
  }
}

TEST(Generate, ConfigValidation) {
  GeneratorConfig cfg;
  cfg.target_rho = 0.5;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.target_rho = -0.92;
  cfg.density_lo = 0.5;
  cfg.density_hi = 0.2;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.density_hi = 0.6;
  cfg.n = 0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Family, NamesRoundTrip) {
  for (Family f : {Family::kKnapsack, Family::kMdmKnapsack, Family::kSetCovering, Family::kSetPartitioning,
                   Family::kAssignment, Family::kUflp}) {
    EXPECT_EQ(parse_family(to_string(f)), f);
  }
  EXPECT_THROW(parse_family("tsp"), Error);
}

TEST(Rng, SplitMixReferenceStream) {
  // First outputs for seed 0 as published with the reference implementation.
  SplitMix64 g(0);
  EXPECT_EQ(g.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(g.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(g.next(), 0x06C45D188009454FULL);
}

TEST(Rng, UniformIntInRange) {
  SplitMix64 g(5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = g.uniform_int(-3, 4);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 4);
  }
}
