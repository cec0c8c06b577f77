#pragma once

#include <optional>
#include <vector>

#include "oscot/interval.hpp"

namespace oscot {

/// A finite union of intervals with exact endpoint-openness bookkeeping,
/// kept normalized: components sorted, pairwise disjoint, never touching
/// (touching or overlapping intervals merge on construction).
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts) { insert(std::move(parts)); }
  explicit IntervalSet(const Interval& iv) : parts_{iv} {}

  bool empty() const { return parts_.empty(); }
  const std::vector<Interval>& components() const { return parts_; }

  bool contains(const Rat& x) const;

  /// Total length (degenerate components contribute zero).
  Rat measure() const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet intersect(const Interval& iv) const;
  IntervalSet subtract(const IntervalSet& other) const;

  /// Minkowski sum with the open ball (-delta, delta): every component
  /// [a,b] (any flags) becomes the open interval (a-delta, b+delta).
  IntervalSet dilate_open(const Rat& delta) const;

  IntervalSet translated(const Rat& c) const;

  /// True when every component is a single point.
  bool is_finite_point_set() const;

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.parts_ == b.parts_;
  }

 private:
  void insert(std::vector<Interval> parts);

  std::vector<Interval> parts_;
};

}  // namespace oscot
