#include "boblp/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace boblp {

bool dominates(const Point& a, const Point& b, double tol) {
  return a.y1 <= b.y1 + tol && a.y2 <= b.y2 + tol && !near(a, b, tol);
}

namespace {

double cross(const Point& a, const Point& b, const Point& c) {
  return (b.y1 - a.y1) * (c.y2 - a.y2) - (b.y2 - a.y2) * (c.y1 - a.y1);
}

double dist(const Point& a, const Point& b) { return std::hypot(b.y1 - a.y1, b.y2 - a.y2); }

// b is a strictly convex corner of a-b-c when it sits more than tol off
// the chord a-c on the lower-left side.
bool convex_corner(const Point& a, const Point& b, const Point& c, double tol) {
  return cross(a, b, c) > tol * dist(a, c);
}

}  // namespace

LowerBoundSet LowerBoundSet::canonical(std::vector<Point> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.y1 < b.y1 || (a.y1 == b.y1 && a.y2 < b.y2);
  });
  std::vector<Point> mono;
  mono.reserve(pts.size());
  for (const Point& p : pts) {
    if (!mono.empty()) {
      const Point& last = mono.back();
      // Near ties merge into the componentwise min so the bound only grows.
      if (p.y1 <= last.y1 + tol || p.y2 >= last.y2 - tol) {
        mono.back().y2 = std::min(last.y2, p.y2);
        continue;
      }
    }
    mono.push_back(p);
  }
  std::vector<Point> hull;
  hull.reserve(mono.size());
  for (const Point& p : mono) {
    while (hull.size() >= 2 && !convex_corner(hull[hull.size() - 2], hull.back(), p, tol)) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return LowerBoundSet(std::move(hull));
}

bool LowerBoundSet::check_invariants(double tol) const {
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const Point& a = points_[i];
    const Point& b = points_[i + 1];
    if (!(a.y1 < b.y1 && a.y2 > b.y2)) return false;
    if (!std::isfinite(a.y1) || !std::isfinite(a.y2)) return false;
  }
  for (std::size_t i = 0; i + 2 < points_.size(); ++i) {
    if (!convex_corner(points_[i], points_[i + 1], points_[i + 2], tol)) return false;
  }
  return true;
}

bool LowerBoundSet::contains(const Point& p, double tol) const {
  if (points_.empty()) return false;
  if (p.y1 < points_.front().y1 - tol) return false;
  if (p.y2 < points_.back().y2 - tol) return false;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const Point& a = points_[i];
    const Point& b = points_[i + 1];
    const double n1 = a.y2 - b.y2;
    const double n2 = b.y1 - a.y1;
    const double len = std::hypot(n1, n2);
    if (n1 * (p.y1 - a.y1) + n2 * (p.y2 - a.y2) < -tol * len) return false;
  }
  return true;
}

bool LowerBoundSet::approx_equal(const LowerBoundSet& o, double tol) const {
  if (size() != o.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!near(points_[i], o.points_[i], tol)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::ptrdiff_t IncumbentArchive::find(const Point& y) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), y.y1 - kTolGeom,
                             [](const Entry& e, double v) { return e.y.y1 < v; });
  for (; it != entries_.end() && it->y.y1 <= y.y1 + kTolGeom; ++it) {
    if (near(it->y, y)) return it - entries_.begin();
  }
  return -1;
}

bool IncumbentArchive::covers(const Point& y) const {
  for (const Entry& e : entries_) {
    if (e.y.y1 > y.y1 + kTolGeom) break;
    if (e.y.y1 <= y.y1 + kTolGeom && e.y.y2 <= y.y2 + kTolGeom) return true;
  }
  return false;
}

bool IncumbentArchive::insert(const Point& y, std::span<const SolutionVec> xs) {
  const auto add = [&](std::size_t idx) {
    bool changed = false;
    for (const SolutionVec& x : xs) {
      if (keys_[idx].insert(x.bits()).second) {
        entries_[idx].solutions.push_back(x);
        changed = true;
      }
    }
    return changed;
  };

  if (const auto idx = find(y); idx >= 0) return add(static_cast<std::size_t>(idx));
  for (const Entry& e : entries_) {
    if (dominates(e.y, y)) return false;
  }
  std::size_t w = 0;
  for (std::size_t r = 0; r < entries_.size(); ++r) {
    if (dominates(y, entries_[r].y)) continue;
    if (w != r) {
      entries_[w] = std::move(entries_[r]);
      keys_[w] = std::move(keys_[r]);
    }
    ++w;
  }
  entries_.resize(w);
  keys_.resize(w);
  const auto pos = std::lower_bound(entries_.begin(), entries_.end(), y.y1,
                                    [](const Entry& e, double v) { return e.y.y1 < v; });
  const auto idx = static_cast<std::size_t>(pos - entries_.begin());
  entries_.insert(pos, Entry{y, {}});
  keys_.insert(keys_.begin() + static_cast<std::ptrdiff_t>(idx), std::set<std::vector<std::uint8_t>>{});
  add(idx);
  return true;
}

std::vector<Point> IncumbentArchive::points() const {
  std::vector<Point> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.y);
  return out;
}

IncumbentArchive update_archive(IncumbentArchive arch, const Point& y, std::span<const SolutionVec> xs) {
  arch.insert(y, xs);
  return arch;
}

std::vector<Point> local_nadirs(std::span<const Point> pts) {
  std::vector<Point> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.push_back({pts[i + 1].y1, pts[i].y2});
  return out;
}

std::vector<Point> local_nadirs(const IncumbentArchive& arch) {
  const auto pts = arch.points();
  return local_nadirs(std::span<const Point>(pts));
}

ScalarDirection segment_normal(const Point& a, const Point& b) {
  if (near(a, b)) {
    throw Error(ErrorCode::kDegenerateSegment, "segment endpoints coincide");
  }
  double l1 = a.y2 - b.y2;
  double l2 = b.y1 - a.y1;
  if (l1 < -kTolGeom || l2 < -kTolGeom) {
    throw Error(ErrorCode::kInvalidArgument, "segment is not ordered left-up to right-bottom");
  }
  l1 = std::max(l1, 0.0);
  l2 = std::max(l2, 0.0);
  if (l1 + l2 <= 0.0) throw Error(ErrorCode::kDegenerateSegment, "segment has no extent");
  return ScalarDirection(l1 / (l1 + l2), l2 / (l1 + l2));
}

bool dominance_test(const LowerBoundSet& lbs, std::span<const Point> nadirs) {
  if (lbs.size() == 1) {
    const Point& p = lbs[0];
    for (const Point& u : nadirs) {
      if (u.y1 >= p.y1 - kTolGeom && u.y2 >= p.y2 - kTolGeom) return false;
    }
    return true;
  }
  for (std::size_t i = 0; i + 1 < lbs.size(); ++i) {
    const ScalarDirection lam = segment_normal(lbs[i], lbs[i + 1]);
    const double rhs = lam.dot(lbs[i]);
    for (const Point& u : nadirs) {
      if (lam.dot(u) > rhs + kTolGeom) return false;
    }
  }
  return true;
}

IntersectResult intersect_update(const LowerBoundSet& lbs, const ScalarDirection& lambda, const Point& y) {
  if (lbs.empty()) return {LowerBoundSet({y}), true};
  const ScalarDirection lam = lambda.normalized();
  const double c = lam.dot(y);
  const auto f = [&](const Point& p) { return lam.dot(p) - c; };
  const auto& pts = lbs.points();
  const double tol = kTolGeom;

  std::vector<Point> out;
  out.reserve(pts.size() + 3);

  // vertical ray above the first point
  const Point& p0 = pts.front();
  if (f(p0) < -tol && lam.l2 > 0.0) out.push_back({p0.y1, (c - lam.l1 * p0.y1) / lam.l2});

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double fi = f(pts[i]);
    if (fi >= -tol) out.push_back(pts[i]);
    if (i + 1 < pts.size()) {
      const double fj = f(pts[i + 1]);
      if ((fi < -tol && fj > tol) || (fi > tol && fj < -tol)) {
        const double t = fi / (fi - fj);
        out.push_back({pts[i].y1 + t * (pts[i + 1].y1 - pts[i].y1),
                       pts[i].y2 + t * (pts[i + 1].y2 - pts[i].y2)});
      }
    }
  }

  // horizontal ray right of the last point
  const Point& pk = pts.back();
  if (f(pk) < -tol && lam.l1 > 0.0) out.push_back({(c - lam.l2 * pk.y2) / lam.l1, pk.y2});

  const bool inserted = lbs.contains(y);
  if (inserted) out.push_back(y);
  if (out.empty()) return {lbs, inserted};
  return {LowerBoundSet::canonical(std::move(out)), inserted};
}

LowerBoundSet intersect_lbs(const LowerBoundSet& a, const LowerBoundSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  LowerBoundSet cur = a;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    cur = intersect_update(cur, segment_normal(b[i], b[i + 1]), b[i]).lbs;
  }
  cur = intersect_update(cur, ScalarDirection(1.0, 0.0), b.front()).lbs;
  cur = intersect_update(cur, ScalarDirection(0.0, 1.0), b.back()).lbs;
  return cur;
}

}  // namespace boblp
