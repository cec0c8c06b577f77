#include "oscot/strip.hpp"

#include <algorithm>

namespace oscot {

SupportSet SupportSet::of(std::vector<SupportPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return SupportSet{std::move(pts)};
}

Strip::Strip(StepFn lower, StepFn upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (!(lower_.domain() == upper_.domain()))
    throw ValidationError("strip bounds live on different domains");
  if (!pointwise_le(lower_, upper_))
    throw ValidationError("strip lower bound exceeds its upper bound");
}

Strip extract_strip(const SupportSet& support, const Domain& domain) {
  if (support.points.empty()) throw ContractError("extract_strip of an empty support");

  // Fiber min/max per x-grid value (points are sorted by x, then y).
  struct Fiber {
    Rat x, lo, hi;
  };
  std::vector<Fiber> fibers;
  for (const auto& p : support.points) {
    if (!domain.contains(p.x))
      throw ContractError("support point outside the domain");
    if (!fibers.empty() && fibers.back().x == p.x)
      fibers.back().hi = p.y;  // sorted: later y is larger
    else
      fibers.push_back(Fiber{p.x, p.y, p.y});
  }

  std::vector<Piece> lo_pieces, hi_pieces;
  Bound cursor{domain.inf(), 0};
  for (size_t i = 0; i < fibers.size(); ++i) {
    Bound end = i + 1 < fibers.size()
                    ? Bound{(fibers[i].x + fibers[i + 1].x) / 2, 0}  // midpoint, left cell
                    : Bound{domain.sup(), 0};
    auto cell = Interval::from_bounds(cursor, end);
    if (!cell) throw ContractError("support x-grid escapes the domain");
    lo_pieces.push_back(Piece{*cell, fibers[i].lo});
    hi_pieces.push_back(Piece{*cell, fibers[i].hi});
    cursor = Bound{end.x, +1};
  }
  return Strip(StepFn(domain, std::move(lo_pieces)), StepFn(domain, std::move(hi_pieces)));
}

bool is_optimal(const Strip& strip, const Rat& delta, const Rat& K) {
  if (delta <= 0) throw DomainError("is_optimal requires delta > 0");
  if (K < 0) throw DomainError("is_optimal requires K >= 0");
  return pointwise_le(down_transform(strip.upper(), delta), strip.lower().add(K));
}

Strip enlarge(const Strip& strip, const Rat& delta, const Rat& K) {
  if (!is_optimal(strip, delta, K))
    throw ContractError("enlarge requires an optimal strip");
  StepFn up = up_transform(strip.lower(), delta);
  StepFn lower = down_transform(up, delta);
  return Strip(std::move(lower), up.add(K));
}

bool contains_support(const Strip& strip, const SupportSet& support) {
  for (const auto& p : support.points) {
    if (p.y < strip.lower()(p.x) || p.y > strip.upper()(p.x)) return false;
  }
  return true;
}

GraphContainment contains_graph(const Strip& strip, const PiecewiseMap& T, const Measure1D& m) {
  // Violations of an affine segment against a step bound form intervals with
  // rational endpoints: a*x + b < v on an interval cuts at (v - b) / a.
  IntervalSet violations;
  IntervalSet supp = m.support().as_set();

  auto clip = [&](const Interval& region, const Interval& within) -> std::optional<Interval> {
    Bound s = std::max(region.start_bound(), within.start_bound(),
                       [](const Bound& a, const Bound& b) { return a < b; });
    Bound e = std::min(region.end_bound(), within.end_bound(),
                       [](const Bound& a, const Bound& b) { return a < b; });
    return Interval::from_bounds(s, e);
  };

  // Where an affine value a*x + b escapes [lo, hi] within `cell`.
  auto affine_escapes = [&](const Interval& cell, const Rat& a, const Rat& b, const Rat& lo,
                            const Rat& hi) {
    std::vector<Interval> out;
    if (a == 0) {
      if (b < lo || b > hi) out.push_back(cell);
      return out;
    }
    auto emit = [&](Bound from, Bound to) {
      from = std::max(from, cell.start_bound(), [](const Bound& x, const Bound& y) { return x < y; });
      to = std::min(to, cell.end_bound(), [](const Bound& x, const Bound& y) { return x < y; });
      if (auto iv = Interval::from_bounds(from, to)) out.push_back(*iv);
    };
    Rat cut_lo = (lo - b) / a;  // a*x + b < lo on one side of this
    Rat cut_hi = (hi - b) / a;  // a*x + b > hi on one side of this
    if (a > 0) {
      emit(cell.start_bound(), Bound{cut_lo, -1});
      emit(Bound{cut_hi, +1}, cell.end_bound());
    } else {
      emit(Bound{cut_lo, +1}, cell.end_bound());
      emit(cell.start_bound(), Bound{cut_hi, -1});
    }
    return out;
  };

  auto scan_body = [&](const Interval& piece_hull, const MapBody& body) {
    if (std::holds_alternative<AtomicTable>(body)) {
      for (const auto& e : std::get<AtomicTable>(body).entries) {
        if (!supp.contains(e.first)) continue;
        if (e.second < strip.lower()(e.first) || e.second > strip.upper()(e.first))
          violations = violations.unite(IntervalSet(Interval::point(e.first)));
      }
      return;
    }
    for (const auto& seg : std::get<std::vector<AffineSegment>>(body)) {
      for (const auto& frag : zip_pieces(strip.lower(), strip.upper())) {
        if (auto cell = clip(seg.interval, frag.interval)) {
          for (const auto& bad : affine_escapes(*cell, seg.slope, seg.intercept, frag.va, frag.vb))
            violations = violations.unite(IntervalSet(bad));
        }
      }
    }
    (void)piece_hull;
  };

  for (const auto& piece : T.pieces()) scan_body(piece.interval, piece.body);

  GraphContainment out{Rat(0), violations.intersect(supp)};
  out.violation_mass = mass_on(m, out.violation_set);
  return out;
}

}  // namespace oscot
