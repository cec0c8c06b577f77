#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "oscot/rational.hpp"

namespace oscot {

/// A point of the line nudged by an infinitesimal: (x, -1) sits just below x,
/// (x, 0) is x itself, (x, +1) just above. Open/closed endpoint bookkeeping
/// reduces to lexicographic comparison of these.
struct Bound {
  Rat x;
  int eps = 0;

  friend bool operator==(const Bound& a, const Bound& b) {
    return a.eps == b.eps && a.x == b.x;
  }
  friend bool operator<(const Bound& a, const Bound& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.eps < b.eps;
  }
  friend bool operator<=(const Bound& a, const Bound& b) { return a < b || a == b; }
};

/// One interval of the real line with endpoint-openness flags.
/// Degenerate intervals (lo == hi) are single points and must be closed.
class Interval {
 public:
  Interval(Rat lo, Rat hi, bool lo_open = false, bool hi_open = false)
      : lo_(std::move(lo)), hi_(std::move(hi)), lo_open_(lo_open), hi_open_(hi_open) {
    if (lo_ > hi_) throw ValidationError("interval with lo > hi");
    if (lo_ == hi_ && (lo_open_ || hi_open_))
      throw ValidationError("degenerate interval must be closed");
  }

  static Interval point(Rat x) { return Interval(x, x); }
  static Interval open(Rat lo, Rat hi) { return Interval(std::move(lo), std::move(hi), true, true); }
  static Interval closed(Rat lo, Rat hi) { return Interval(std::move(lo), std::move(hi)); }

  /// Reassembles an interval from generalized bounds; empty -> nullopt.
  static std::optional<Interval> from_bounds(const Bound& start, const Bound& end);

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  bool lo_open() const { return lo_open_; }
  bool hi_open() const { return hi_open_; }

  bool is_point() const { return lo_ == hi_; }
  Rat length() const { return hi_ - lo_; }
  Rat midpoint() const { return (lo_ + hi_) / 2; }

  Bound start_bound() const { return Bound{lo_, lo_open_ ? +1 : 0}; }
  Bound end_bound() const { return Bound{hi_, hi_open_ ? -1 : 0}; }

  bool contains(const Rat& x) const {
    Bound p{x, 0};
    return !(p < start_bound()) && !(end_bound() < p);
  }

  Interval translated(const Rat& c) const { return Interval(lo_ + c, hi_ + c, lo_open_, hi_open_); }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.lo_open_ == b.lo_open_ &&
           a.hi_open_ == b.hi_open_;
  }

  std::string str() const {
    return std::string(lo_open_ ? "(" : "[") + to_string(lo_) + ", " + to_string(hi_) +
           (hi_open_ ? ")" : "]");
  }

 private:
  Rat lo_, hi_;
  bool lo_open_, hi_open_;
};

inline std::optional<Interval> Interval::from_bounds(const Bound& start, const Bound& end) {
  // start must have eps in {0,+1}, end in {-1,0}
  if (end < start) return std::nullopt;
  return Interval(start.x, end.x, start.eps == +1, end.eps == -1);
}

class IntervalSet;

/// A compact subset of the line: finitely many pairwise-disjoint,
/// non-touching *closed* intervals sorted left to right. Degenerate
/// components (single points) are allowed, so a finite atom grid is a
/// Domain too.
class Domain {
 public:
  explicit Domain(std::vector<Interval> components);

  static Domain unit() { return Domain({Interval::closed(Rat(0), Rat(1))}); }
  static Domain points(const std::vector<Rat>& xs);

  const std::vector<Interval>& components() const { return components_; }
  const Rat& inf() const { return components_.front().lo(); }
  const Rat& sup() const { return components_.back().hi(); }
  /// The paper-facing length L = sup - inf.
  Rat diameter() const { return sup() - inf(); }

  bool contains(const Rat& x) const;
  bool contains(const Domain& other) const;

  IntervalSet as_set() const;

  Domain translated(const Rat& c) const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<Interval> components_;
};

}  // namespace oscot
