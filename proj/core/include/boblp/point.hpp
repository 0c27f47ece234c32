#pragma once

#include <cmath>
#include <compare>

namespace boblp {

/// Equality, collinearity and hyperplane-membership tolerance in criteria space.
inline constexpr double kTolGeom = 1e-7;

/// A point in criteria space, (z1, z2).
struct Point {
  double y1 = 0.0;
  double y2 = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline bool near(const Point& a, const Point& b, double tol = kTolGeom) {
  return std::abs(a.y1 - b.y1) <= tol && std::abs(a.y2 - b.y2) <= tol;
}

/// Nonnegative weights of a weighted-sum scalarization; also used as the
/// normal of a criteria-space hyperplane.
struct ScalarDirection {
  double l1 = 0.5;
  double l2 = 0.5;

  ScalarDirection() = default;
  /// Throws Error(kInvalidArgument) on negative or all-zero weights.
  ScalarDirection(double w1, double w2);

  double dot(const Point& p) const { return l1 * p.y1 + l2 * p.y2; }
  ScalarDirection normalized() const;
  bool is_axis() const { return l1 == 0.0 || l2 == 0.0; }

  friend bool operator==(const ScalarDirection&, const ScalarDirection&) = default;
};

}  // namespace boblp
