#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace boblp {

enum class CutKind : std::uint8_t { kCover, kObjectiveBound, kOther };
enum class CutOrigin : std::uint8_t { kSinglePoint, kMultiPoint, kInherited };

/// Canonical identity of a cover cut: sorted signed support (+(j+1) for x_j,
/// -(j+1) for a complemented x_j) and the integer right-hand side.
struct CutKey {
  std::vector<std::int32_t> support;
  std::int64_t rhs = 0;

  friend bool operator==(const CutKey&, const CutKey&) = default;
};

struct CutKeyHash {
  std::size_t operator()(const CutKey& k) const noexcept;
};

/// alpha . x <= beta over the original variables.
struct LinearCut {
  std::vector<double> coeffs;
  double rhs = 0.0;
  CutKind kind = CutKind::kOther;
  CutOrigin origin = CutOrigin::kSinglePoint;

  double lhs(std::span<const double> x) const;
  double violation(std::span<const double> x) const { return lhs(x) - rhs; }

  /// Only meaningful for cover cuts (coefficients in {-1, 0, 1}).
  CutKey key() const;
  std::string to_string() const;
};

}  // namespace boblp
