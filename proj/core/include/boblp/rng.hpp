#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace boblp {

/// SplitMix64 (Steele, Lea, Flood 2014). State advances by the golden gamma
/// 0x9E3779B97F4A7C15; output mixing uses the multipliers
/// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with shifts 30, 27, 31.
/// Integer and uniform draws use only integer arithmetic and exact scaling;
/// normal() additionally depends on libm log/cos.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi], unbiased (rejection sampling).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller (one draw per call; the sine branch is
  /// discarded to keep the stream position independent of caching).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Derives an independent stream seed, e.g. for the k-th file of a batch.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t k) {
    SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (k + 1)));
    return g.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace boblp
