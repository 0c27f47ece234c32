#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "boblp/model.hpp"
#include "boblp/point.hpp"

namespace boblp {

/// True iff a != b and a <= b componentwise (equality within tol).
bool dominates(const Point& a, const Point& b, double tol = kTolGeom);

/// Convex piecewise-linear frontier, left-up to right-bottom, closed by a
/// vertical ray above the first point and a horizontal ray right of the last.
class LowerBoundSet {
 public:
  LowerBoundSet() = default;
  explicit LowerBoundSet(std::vector<Point> pts) : points_(std::move(pts)) {}

  /// Sorts, drops dominated and collinear points and restores convexity by
  /// taking the lower-left hull. Any valid set of frontier points survives.
  static LowerBoundSet canonical(std::vector<Point> pts, double tol = kTolGeom);

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const Point& front() const { return points_.front(); }
  const Point& back() const { return points_.back(); }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Monotonicity, convexity and no collinear triples.
  bool check_invariants(double tol = kTolGeom) const;

  /// Membership of p in L + R^2_>= (segment halfspaces plus both end rays).
  bool contains(const Point& p, double tol = kTolGeom) const;

  bool approx_equal(const LowerBoundSet& o, double tol = kTolGeom) const;

 private:
  std::vector<Point> points_;
};

/// Archived nondominated points (increasing y1) with the integral solutions
/// mapping to each.
class IncumbentArchive {
 public:
  struct Entry {
    Point y;
    std::vector<SolutionVec> solutions;
  };

  /// Returns true if the archive changed (new point or new equivalent).
  bool insert(const Point& y, std::span<const SolutionVec> xs);
  bool insert(const Point& y, const SolutionVec& x) { return insert(y, std::span(&x, 1)); }

  std::vector<Point> points() const;
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Index of the archived point equal to y, or -1.
  std::ptrdiff_t find(const Point& y) const;
  /// True if some archived point dominates or equals y.
  bool covers(const Point& y) const;

 private:
  std::vector<Entry> entries_;
  std::vector<std::set<std::vector<std::uint8_t>>> keys_;
};

IncumbentArchive update_archive(IncumbentArchive arch, const Point& y, std::span<const SolutionVec> xs);

/// (u''.y1, u'.y2) for each consecutive pair of archived points.
std::vector<Point> local_nadirs(const IncumbentArchive& arch);
std::vector<Point> local_nadirs(std::span<const Point> pts);

/// Positive normal of the segment a-b, scaled to l1 + l2 = 1.
ScalarDirection segment_normal(const Point& a, const Point& b);

/// Conservative nadir-vs-segment dominance test. True means fathomable.
bool dominance_test(const LowerBoundSet& lbs, std::span<const Point> nadirs);

struct IntersectResult {
  LowerBoundSet lbs;
  bool inserted = false;
};

/// Convex intersection of L + R^2_>= with {p : lambda.p >= lambda.y}.
/// y joins the frontier only when it lies in L + R^2_>=; otherwise the
/// halfspace is still applied and inserted is false.
IntersectResult intersect_update(const LowerBoundSet& lbs, const ScalarDirection& lambda, const Point& y);

/// Frontier of (a + R^2_>=) intersected with (b + R^2_>=).
LowerBoundSet intersect_lbs(const LowerBoundSet& a, const LowerBoundSet& b);

}  // namespace boblp
