#include <gtest/gtest.h>

#include <memory>

#include "boblp/cuts.hpp"
#include "boblp/rng.hpp"
#include "oracles.hpp"

using namespace boblp;

namespace {

Instance cover_row(const std::string& objectives = "0 0 0\n0 0 0\n") {
  return parse_instance("3 1\n" + objectives + "3 4 5 <= 6\n", "cover");
}

// Cut holds at every 0/1 point satisfying row `row` alone.
bool valid_for_row(const Instance& inst, std::size_t row, const LinearCut& cut) {
  Instance one = inst;
  one.m = 1;
  one.a.assign(inst.row(row).begin(), inst.row(row).end());
  one.senses = {inst.senses[row]};
  one.b = {inst.b[row]};
  for (const auto& x : oracle::all_feasible(one)) {
    std::vector<double> v(x.begin(), x.end());
    if (cut.lhs(v) > cut.rhs + 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST(CoverSingle, HandTrace) {
  const Instance inst = cover_row();
  const std::vector<double> x{1, 0.75, 0};
  const auto cut = cover_separate_single(inst, 0, x);
  ASSERT_TRUE(cut);
  EXPECT_EQ(cut->coeffs, (std::vector<double>{1, 1, 0}));
  EXPECT_EQ(cut->rhs, 1.0);
  EXPECT_NEAR(cut->violation(x), 0.75, 1e-12);
  EXPECT_EQ(cut->kind, CutKind::kCover);
  EXPECT_EQ(cut->to_string(), "x1 + x2 <= 1");
}

TEST(CoverSingle, NoViolatedCover) {
  const Instance inst = cover_row();
  EXPECT_FALSE(cover_separate_single(inst, 0, std::vector<double>{0.5, 0.5, 0.4}));
  EXPECT_FALSE(cover_separate_single(inst, 0, std::vector<double>{1, 0, 0}));
}

TEST(CoverSingle, GreaterEqualRowComplemented) {
  // -3x1 - 4x2 - 5x3 >= -6 is the same knapsack.
  const Instance inst = parse_instance("3 1\n0 0 0\n0 0 0\n-3 -4 -5 >= -6\n");
  const auto cut = cover_separate_single(inst, 0, std::vector<double>{1, 0.75, 0});
  ASSERT_TRUE(cut);
  EXPECT_EQ(cut->coeffs, (std::vector<double>{1, 1, 0}));
}

TEST(CoverSingle, NegativeCoefficientComplemented) {
  // 3x1 - 4x2 <= -1  <=>  3x1 + 4(1 - x2) <= 3: cover {x1, ~x2}.
  const Instance inst = parse_instance("2 1\n0 0\n0 0\n3 -4 <= -1\n");
  const std::vector<double> x{0.9, 0.2};
  const auto cut = cover_separate_single(inst, 0, x);
  ASSERT_TRUE(cut);
  EXPECT_EQ(cut->coeffs, (std::vector<double>{1, -1}));
  EXPECT_EQ(cut->rhs, 0.0);
  EXPECT_GT(cut->violation(x), kTolCut);
  EXPECT_TRUE(valid_for_row(inst, 0, *cut));
}

TEST(CoverMulti, SharedCut) {
  const Instance inst = cover_row();
  const std::vector<std::vector<double>> t{{1, 0.75, 0}, {0.9, 0.9, 0}};
  const auto cut = cover_separate_multi(inst, 0, t);
  ASSERT_TRUE(cut);
  EXPECT_EQ(cut->coeffs, (std::vector<double>{1, 1, 0}));
  EXPECT_EQ(cut->origin, CutOrigin::kMultiPoint);
  for (const auto& x : t) EXPECT_GT(cut->violation(x), kTolCut);
}

TEST(CoverMulti, NoCommonCut) {
  const Instance inst = cover_row();
  const std::vector<std::vector<double>> t{{1, 0.75, 0}, {0, 0.9, 0.96}};
  EXPECT_FALSE(cover_separate_multi(inst, 0, t));
}

TEST(CoverMulti, SingleTargetReducesToSingle) {
  const Instance inst = cover_row();
  SplitMix64 g(8);
  for (int k = 0; k < 200; ++k) {
    const std::vector<double> x{g.uniform(), g.uniform(), g.uniform()};
    const auto a = cover_separate_single(inst, 0, x);
    const auto b = cover_separate_multi(inst, 0, std::vector<std::vector<double>>{x});
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) { EXPECT_EQ(a->key(), b->key()); }
  }
}

TEST(CutPool, CheckAndLineage) {
  LinearCut c;
  c.kind = CutKind::kCover;
  c.coeffs = {1, 0, -1};
  c.rhs = 0;
  auto grand = std::make_shared<CutPool>();
  EXPECT_FALSE(pool_check(*grand, c));
  EXPECT_TRUE(grand->insert(c));
  EXPECT_TRUE(pool_check(*grand, c));
  EXPECT_FALSE(grand->insert(c));
  auto parent = std::make_shared<CutPool>(grand);
  CutPool child(parent);
  EXPECT_TRUE(pool_check(child, c));
  LinearCut d = c;
  d.coeffs = {0, 1, 1};
  d.rhs = 1;
  EXPECT_TRUE(child.insert(d));
  EXPECT_FALSE(pool_check(*parent, d));
  ASSERT_EQ(child.lineage().size(), 2u);
  EXPECT_EQ(child.lineage().front().key(), c.key());
}

TEST(CutKey, SupportIsSorted) {
  LinearCut a, b;
  a.coeffs = {0, 1, -1, 1};
  b.coeffs = {0, 1, -1, 1};
  a.rhs = b.rhs = 1;
  EXPECT_EQ(a.key(), b.key());
  EXPECT_EQ(a.key().support, (std::vector<std::int32_t>{-3, 2, 4}));
  EXPECT_EQ(CutKeyHash{}(a.key()), CutKeyHash{}(b.key()));
}

TEST(MpConfig, Validation) {
  MpConfig c;
  EXPECT_NO_THROW(c.validate());
  c.max_step = 0;
  EXPECT_THROW(c.validate(), Error);
  c.max_step = 2;
  c.min_cut_fraction = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(MultiPoint, IntegralFrontierNoCuts) {
  auto inst = std::make_shared<const Instance>(parse_instance("2 1\n-1 0\n0 -1\n1 1 <= 1\n"));
  LpModel m(inst);
  auto fr = dichotomy_lbs(m);
  ASSERT_TRUE(fr);
  CutPool pool;
  int reopts = 0;
  const auto out = multipoint_cutting_plane(m, *fr, MpConfig{}, pool, [&](const LpModel& mm) {
    ++reopts;
    return dichotomy_lbs(mm);
  });
  EXPECT_EQ(out.sp_cuts + out.mp_cuts, 0u);
  EXPECT_EQ(reopts, 0);
  EXPECT_TRUE(m.cuts.empty());
}

TEST(MultiPoint, KnapsackFrontierGetsSharedCut) {
  auto inst = std::make_shared<const Instance>(cover_row("-1 -1 0\n0 -1 -1\n"));
  LpModel m(inst);
  auto fr = dichotomy_lbs(m);
  ASSERT_TRUE(fr);
  ASSERT_GE(fr->lbs.size(), 2u);
  CutPool pool;
  const auto out = multipoint_cutting_plane(m, *fr, MpConfig{}, pool, [](const LpModel& mm) { return dichotomy_lbs(mm); });
  EXPECT_GE(out.mp_cuts, 1u);
  ASSERT_FALSE(out.records.empty());
  const auto& first = out.records.front();
  EXPECT_EQ(first.targets.size(), 2u);
  EXPECT_EQ(first.cut.to_string(), "x1 + x2 <= 1");
  for (const auto& r : out.records) {
    for (const auto& x : r.targets) EXPECT_GT(r.cut.violation(x), kTolCut);
    EXPECT_TRUE(valid_for_row(*inst, 0, r.cut));
  }
  EXPECT_EQ(pool.local().size(), out.sp_cuts + out.mp_cuts);
}

TEST(MultiPoint, PooledCutReappliedNotRecounted) {
  auto inst = std::make_shared<const Instance>(cover_row("-1 -1 0\n0 -1 -1\n"));
  LpModel m(inst);
  auto fr = dichotomy_lbs(m);
  ASSERT_TRUE(fr);
  // Ancestor pool already knows every cover of the row.
  auto parent = std::make_shared<CutPool>();
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
    LinearCut c;
    c.kind = CutKind::kCover;
    c.coeffs = {0, 0, 0};
    c.coeffs[static_cast<std::size_t>(i)] = c.coeffs[static_cast<std::size_t>(j)] = 1;
    c.rhs = 1;
    parent->insert(c);
  }
  CutPool pool(parent);
  const auto out = multipoint_cutting_plane(m, *fr, MpConfig{}, pool, [](const LpModel& mm) { return dichotomy_lbs(mm); });
  EXPECT_EQ(out.sp_cuts + out.mp_cuts, 0u);
  EXPECT_TRUE(pool.local().empty());
  EXPECT_FALSE(m.cuts.empty());
  for (const auto& c : m.cuts) EXPECT_EQ(c.origin, CutOrigin::kInherited);
}

// --------------------------------------------------------------------------
// Properties

TEST(CutProperty, SeparatedCutsAreValidAndViolated) {
  SplitMix64 g(1234);
  std::size_t emitted = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(g.uniform_int(0, 7));
    Instance inst;
    inst.n = n;
    inst.m = 1;
    inst.c1.assign(n, 0);
    inst.c2.assign(n, 0);
    double total = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = static_cast<double>(g.uniform_int(-6, 20));
      inst.a.push_back(v);
      total += std::abs(v);
    }
    const int kind = static_cast<int>(g.uniform_int(0, 2));
    inst.senses = {kind == 0 ? Sense::kLessEqual : kind == 1 ? Sense::kGreaterEqual : Sense::kEqual};
    inst.b = {std::floor(g.uniform(-0.2, 0.6) * total)};
    std::vector<std::vector<double>> targets;
    const std::size_t k = 1 + static_cast<std::size_t>(g.uniform_int(0, 2));
    for (std::size_t t = 0; t < k; ++t) {
      std::vector<double> x(n);
      for (double& v : x) v = g.bernoulli(0.5) ? std::round(g.uniform()) : g.uniform();
      targets.push_back(x);
    }
    const auto cut = cover_separate_multi(inst, 0, targets);
    if (!cut) continue;
    ++emitted;
    EXPECT_TRUE(valid_for_row(inst, 0, *cut)) << cut->to_string();
    for (const auto& x : targets) EXPECT_GT(cut->violation(x), kTolCut);
  }
  EXPECT_GT(emitted, 30u);
}
