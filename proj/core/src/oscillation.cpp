#include "oscot/oscillation.hpp"

#include <algorithm>
#include <vector>

namespace oscot {

namespace {

// One affine stretch of the graph over a closed x-range (points are the
// slope-0, lo == hi case). Values on half-open map segments extend to the
// closure: the endpoint values are one-sided limits, which is exactly what
// the supremum over the open window sees.
struct GraphElement {
  Rat lo, hi;        // closed x-range
  Rat slope, offset; // value = slope * x + offset

  Rat value(const Rat& x) const { return slope * x + offset; }
};

std::vector<GraphElement> graph_elements(const PiecewiseMap& T, const Domain& supp) {
  std::vector<GraphElement> out;
  IntervalSet supp_set = supp.as_set();
  for (const auto& piece : T.pieces()) {
    if (std::holds_alternative<AtomicTable>(piece.body)) {
      for (const auto& e : std::get<AtomicTable>(piece.body).entries)
        if (supp_set.contains(e.first))
          out.push_back(GraphElement{e.first, e.first, Rat(0), e.second});
    } else {
      for (const auto& seg : std::get<std::vector<AffineSegment>>(piece.body)) {
        IntervalSet covered = supp_set.intersect(seg.interval);
        for (const auto& part : covered.components())
          out.push_back(GraphElement{part.lo(), part.hi(), seg.slope, seg.intercept});
      }
    }
  }
  return out;
}

// Max of |e1(x) - e2(x')| over x in e1, x' in e2, |x - x'| <= delta.
// The difference is linear, so the max sits at a vertex of the box cut by
// the two window lines.
Rat pair_max(const GraphElement& e1, const GraphElement& e2, const Rat& delta) {
  Rat best(0);
  bool any = false;
  auto consider = [&](const Rat& x, const Rat& xp) {
    if (x < e1.lo || x > e1.hi || xp < e2.lo || xp > e2.hi) return;
    Rat d = x - xp;
    if (d > delta || d < -delta) return;
    Rat v = rat_abs(e1.value(x) - e2.value(xp));
    if (!any || v > best) best = v;
    any = true;
  };
  // box corners
  for (const Rat& x : {e1.lo, e1.hi})
    for (const Rat& xp : {e2.lo, e2.hi}) consider(x, xp);
  // window lines x' = x +- delta against box edges
  for (const Rat& x : {e1.lo, e1.hi}) {
    consider(x, x - delta);
    consider(x, x + delta);
  }
  for (const Rat& xp : {e2.lo, e2.hi}) {
    consider(xp - delta, xp);
    consider(xp + delta, xp);
  }
  return best;
}

// Smallest |x - x'| between two closed ranges.
Rat range_gap(const GraphElement& a, const GraphElement& b) {
  if (a.hi < b.lo) return b.lo - a.hi;
  if (b.hi < a.lo) return a.lo - b.hi;
  return Rat(0);
}

}  // namespace

Rat osc_map(const PiecewiseMap& T, const Domain& supp_mu, const Rat& delta) {
  if (delta <= 0) throw DomainError("osc_map requires delta > 0");
  if (!T.covers(supp_mu)) throw ContractError("osc_map: map not defined on the whole support");

  std::vector<GraphElement> elems = graph_elements(T, supp_mu);
  Rat best(0);
  for (size_t i = 0; i < elems.size(); ++i) {
    for (size_t j = i; j < elems.size(); ++j) {
      // Pairs at distance exactly delta are excluded, but any pair of ranges
      // that get strictly closer than delta realizes its boxed maximum as a
      // supremum over admissible pairs.
      if (range_gap(elems[i], elems[j]) >= delta) continue;
      best = rat_max(best, pair_max(elems[i], elems[j], delta));
    }
  }
  return best;
}

Rat osc_plan(const SupportSet& support, const Rat& delta) {
  if (delta <= 0) throw DomainError("osc_plan requires delta > 0");
  if (support.points.empty()) throw ContractError("osc_plan of an empty support");
  Rat best(0);
  const auto& pts = support.points;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i; j < pts.size(); ++j) {
      Rat dx = rat_abs(pts[i].x - pts[j].x);
      if (dx >= delta) continue;
      best = rat_max(best, rat_abs(pts[i].y - pts[j].y));
    }
  }
  return best;
}

}  // namespace oscot
