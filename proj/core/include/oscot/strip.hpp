#pragma once

#include <vector>

#include "oscot/measure.hpp"
#include "oscot/piecewise_map.hpp"
#include "oscot/step_function.hpp"
#include "oscot/transforms.hpp"

namespace oscot {

struct SupportPoint {
  Rat x;
  Rat y;

  friend bool operator==(const SupportPoint& a, const SupportPoint& b) = default;
  friend bool operator<(const SupportPoint& a, const SupportPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

/// Finite support of a plan: the set of coupled (x, y) points.
struct SupportSet {
  std::vector<SupportPoint> points;  // sorted, deduplicated

  static SupportSet of(std::vector<SupportPoint> pts);
};

/// The region between two step functions lower <= upper over one domain.
class Strip {
 public:
  Strip(StepFn lower, StepFn upper);

  const StepFn& lower() const { return lower_; }
  const StepFn& upper() const { return upper_; }
  const Domain& domain() const { return lower_.domain(); }

  friend bool operator==(const Strip& a, const Strip& b) {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_;
  }

 private:
  StepFn lower_, upper_;
};

/// Fiber minima/maxima of the support, extended to step functions constant
/// on the Voronoi cells of the x-grid inside `domain` (cell boundaries at
/// midpoints, assigned to the left cell).
Strip extract_strip(const SupportSet& support, const Domain& domain);

/// The pair condition at level K: any two strip points within x-distance
/// < delta differ by at most K in y. Decided exactly through the transform
/// identity down(upper) <= lower + K.
bool is_optimal(const Strip& strip, const Rat& delta, const Rat& K);

/// Replaces [f, g] by [up-down of f, up of f + K]: the largest strip with the
/// same lower-envelope data that is still optimal at level K. Idempotent.
Strip enlarge(const Strip& strip, const Rat& delta, const Rat& K);

bool contains_support(const Strip& strip, const SupportSet& support);

struct GraphContainment {
  Rat violation_mass;        // m-mass of {x : T(x) outside the strip}
  IntervalSet violation_set; // where the graph escapes (within supp m)
  bool almost_everywhere() const { return violation_mass == 0; }
  /// True when the escape set is at most finitely many points.
  bool except_finitely_many() const { return violation_set.is_finite_point_set(); }
};

/// Exact escape set and mass of {x : T(x) < lower(x) or T(x) > upper(x)}.
GraphContainment contains_graph(const Strip& strip, const PiecewiseMap& T, const Measure1D& m);

}  // namespace oscot
