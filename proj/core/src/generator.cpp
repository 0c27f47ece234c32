#include <algorithm>
#include <cmath>
#include <numeric>

#include "boblp/model.hpp"
#include "boblp/rng.hpp"

namespace boblp {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::kKnapsack: return "knapsack";
    case Family::kMdmKnapsack: return "mdm-knapsack";
    case Family::kSetCovering: return "set-covering";
    case Family::kSetPartitioning: return "set-partitioning";
    case Family::kAssignment: return "assignment";
    case Family::kUflp: return "uflp";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  for (Family f : {Family::kKnapsack, Family::kMdmKnapsack, Family::kSetCovering,
                   Family::kSetPartitioning, Family::kAssignment, Family::kUflp}) {
    if (to_string(f) == s) return f;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown instance family '" + std::string(s) + "'");
}

void GeneratorConfig::validate() const {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "generator needs n >= 1");
  if (!(target_rho >= -1.0 && target_rho < 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "target_rho must lie in [-1, 0)");
  }
  if (!(density_lo > 0.0 && density_lo <= density_hi && density_hi <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "density range must be ordered within (0, 1]");
  }
}

namespace {

constexpr std::int64_t kCoeffLo = 1;
constexpr std::int64_t kCoeffHi = 100;
constexpr int kRowRetries = 100;

std::vector<double> uniform_costs(SplitMix64& rng, std::size_t n) {
  std::vector<double> c(n);
  for (auto& v : c) v = static_cast<double>(rng.uniform_int(kCoeffLo, kCoeffHi));
  return c;
}

std::vector<double> standardized(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / n);
  std::vector<double> out(v.size(), 0.0);
  if (sd <= 0.0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
  return out;
}

// c2 = rho * std(c1) + sqrt(1 - rho^2) * eps, where eps is centered,
// orthogonalized against std(c1) and unit-scaled so the sample correlation
// before integer rounding is exactly rho; then mapped affinely onto
// [kCoeffLo, kCoeffHi] and rounded.
std::vector<double> correlated_costs(SplitMix64& rng, std::span<const double> c1, double rho) {
  const std::size_t n = c1.size();
  std::vector<double> eps(n);
  for (auto& e : eps) e = rng.normal();
  if (n < 2) {
    return {static_cast<double>(rng.uniform_int(kCoeffLo, kCoeffHi))};
  }
  const auto z = standardized(c1);
  const double nd = static_cast<double>(n);
  const double emean = std::accumulate(eps.begin(), eps.end(), 0.0) / nd;
  for (auto& e : eps) e -= emean;
  const double zz = std::inner_product(z.begin(), z.end(), z.begin(), 0.0);
  if (zz > 0.0) {
    const double proj = std::inner_product(eps.begin(), eps.end(), z.begin(), 0.0) / zz;
    for (std::size_t i = 0; i < n; ++i) eps[i] -= proj * z[i];
  }
  const double ee = std::inner_product(eps.begin(), eps.end(), eps.begin(), 0.0);
  if (ee > 0.0) {
    const double scale = std::sqrt(nd / ee);
    for (auto& e : eps) e *= scale;
  }
  const double noise = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = rho * z[i] + noise * eps[i];
  const auto [lo_it, hi_it] = std::minmax_element(w.begin(), w.end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<double> c2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = hi > lo ? (w[i] - lo) / (hi - lo) : 0.5;
    c2[i] = std::round(static_cast<double>(kCoeffLo) + t * static_cast<double>(kCoeffHi - kCoeffLo));
  }
  return c2;
}

void add_row(Instance& inst, std::span<const double> coeffs, Sense s, double rhs) {
  inst.a.insert(inst.a.end(), coeffs.begin(), coeffs.end());
  inst.senses.push_back(s);
  inst.b.push_back(rhs);
  ++inst.m;
}

double dot(std::span<const double> a, std::span<const std::uint8_t> x) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (x[j]) s += a[j];
  }
  return s;
}

std::vector<double> random_weights(SplitMix64& rng, std::size_t n) { return uniform_costs(rng, n); }

std::vector<double> random_incidence_row(SplitMix64& rng, std::size_t n, double lo, double hi) {
  for (int attempt = 0; attempt < kRowRetries; ++attempt) {
    const double density = rng.uniform(lo, hi);
    std::vector<double> row(n, 0.0);
    bool any = false;
    for (auto& v : row) {
      if (rng.bernoulli(density)) {
        v = 1.0;
        any = true;
      }
    }
    if (any) return row;
  }
  throw Error(ErrorCode::kInfeasibleFamilyParameters,
              "density range produced an empty row after " + std::to_string(kRowRetries) + " retries");
}

std::size_t cover_row_count(SplitMix64& rng, std::size_t n) {
  const auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>((n + 9) / 10));
  const auto hi = std::max<std::int64_t>(lo, static_cast<std::int64_t>(3 * n / 10));
  return static_cast<std::size_t>(rng.uniform_int(lo, hi));
}

void gen_knapsack(Instance& inst, SplitMix64& rng) {
  const auto w = random_weights(rng, inst.n);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  add_row(inst, w, Sense::kLessEqual, std::floor(total / 2.0));
}

// Two capacity rows and one demand row; a planted subset guarantees
// feasibility.
void gen_mdm_knapsack(Instance& inst, SplitMix64& rng) {
  std::vector<std::uint8_t> planted(inst.n);
  for (auto& p : planted) p = rng.bernoulli(0.4) ? 1 : 0;
  for (int k = 0; k < 2; ++k) {
    const auto w = random_weights(rng, inst.n);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    add_row(inst, w, Sense::kLessEqual, std::max(std::floor(total / 2.0), dot(w, planted)));
  }
  const auto d = random_weights(rng, inst.n);
  const double total = std::accumulate(d.begin(), d.end(), 0.0);
  add_row(inst, d, Sense::kGreaterEqual, std::min(std::floor(0.3 * total), dot(d, planted)));
}

void gen_set_covering(Instance& inst, SplitMix64& rng, const GeneratorConfig& cfg) {
  const std::size_t rows = cover_row_count(rng, inst.n);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto r = random_incidence_row(rng, inst.n, cfg.density_lo, cfg.density_hi);
    add_row(inst, r, Sense::kGreaterEqual, 1.0);
  }
}

// Rows are first split among a few planted columns, which form a feasible
// partition; the remaining columns are random incidence vectors.
void gen_set_partitioning(Instance& inst, SplitMix64& rng, const GeneratorConfig& cfg) {
  const std::size_t n = inst.n;
  const std::size_t rows = cover_row_count(rng, n);
  const auto kmax = static_cast<std::int64_t>(std::max<std::size_t>(1, std::min(rows, std::max<std::size_t>(1, n / 3))));
  const auto k = static_cast<std::size_t>(rng.uniform_int(1, kmax));
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n - 1)));
    std::swap(cols[i], cols[j]);
  }
  std::vector<std::size_t> owner(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    owner[r] = r < k ? r : static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(k - 1)));
  }
  std::vector<double> mat(rows * n, 0.0);
  for (std::size_t r = 0; r < rows; ++r) mat[r * n + cols[owner[r]]] = 1.0;
  for (std::size_t idx = k; idx < n; ++idx) {
    const std::size_t col = cols[idx];
    const auto colv = random_incidence_row(rng, rows, cfg.density_lo, cfg.density_hi);
    for (std::size_t r = 0; r < rows; ++r) mat[r * n + col] = colv[r];
  }
  for (std::size_t r = 0; r < rows; ++r) {
    add_row(inst, std::span<const double>(mat.data() + r * n, n), Sense::kEqual, 1.0);
  }
}

void gen_assignment(Instance& inst) {
  const std::size_t k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(inst.n))));
  const std::size_t n = inst.n;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> row(n, 0.0);
    for (std::size_t j = 0; j < k; ++j) row[i * k + j] = 1.0;
    add_row(inst, row, Sense::kEqual, 1.0);
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> row(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) row[i * k + j] = 1.0;
    add_row(inst, row, Sense::kEqual, 1.0);
  }
}

// Variables: facility openings y_0..y_{f-1}, then assignments x_{ij} at
// f + i*c + j.
void gen_uflp(Instance& inst, std::size_t f, std::size_t c) {
  const std::size_t n = inst.n;
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<double> row(n, 0.0);
    for (std::size_t i = 0; i < f; ++i) row[f + i * c + j] = 1.0;
    add_row(inst, row, Sense::kEqual, 1.0);
  }
  for (std::size_t i = 0; i < f; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<double> row(n, 0.0);
      row[f + i * c + j] = 1.0;
      row[i] = -1.0;
      add_row(inst, row, Sense::kLessEqual, 0.0);
    }
  }
}

}  // namespace

Instance generate(const GeneratorConfig& cfg) {
  cfg.validate();
  SplitMix64 rng(cfg.seed);
  Instance inst;
  inst.name = std::string(to_string(cfg.family)) + "-n" + std::to_string(cfg.n) + "-s" +
              std::to_string(cfg.seed);
  inst.n = cfg.n;

  std::size_t uflp_f = 0, uflp_c = 0;
  if (cfg.family == Family::kAssignment) {
    const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(cfg.n))));
    if (k < 1) throw Error(ErrorCode::kInfeasibleFamilyParameters, "assignment needs n >= 1");
    inst.n = k * k;
  } else if (cfg.family == Family::kUflp) {
    if (cfg.n < 2) throw Error(ErrorCode::kInfeasibleFamilyParameters, "uflp needs n >= 2");
    uflp_f = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(cfg.n))));
    uflp_c = std::max<std::size_t>(1, (cfg.n - uflp_f) / uflp_f);
    inst.n = uflp_f + uflp_f * uflp_c;
  }

  inst.c1 = uniform_costs(rng, inst.n);
  inst.c2 = correlated_costs(rng, inst.c1, cfg.target_rho);

  switch (cfg.family) {
    case Family::kKnapsack:
      gen_knapsack(inst, rng);
      break;
    case Family::kMdmKnapsack:
      gen_mdm_knapsack(inst, rng);
      break;
    case Family::kSetCovering:
      gen_set_covering(inst, rng, cfg);
      break;
    case Family::kSetPartitioning:
      gen_set_partitioning(inst, rng, cfg);
      break;
    case Family::kAssignment:
      gen_assignment(inst);
      break;
    case Family::kUflp:
      gen_uflp(inst, uflp_f, uflp_c);
      break;
  }

  // Knapsack-like families maximize profit; the solver minimizes.
  if (cfg.family == Family::kKnapsack || cfg.family == Family::kMdmKnapsack) {
    for (auto& v : inst.c1) v = -v;
    for (auto& v : inst.c2) v = -v;
  }
  inst.validate();
  return inst;
}

}  // namespace boblp
