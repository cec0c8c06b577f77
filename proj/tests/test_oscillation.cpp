#include <doctest.h>

#include "oscot/counterexample.hpp"
#include "oscot/oscillation.hpp"
#include "test_support.hpp"

using namespace oscot;
using namespace oscot::testing;

namespace {

const Rat kNudge(1, 9973);

// Brute force for maps over the critical positions (segment endpoints, their
// +-delta shifts, both nudged) plus a uniform grid. One-sided limits at
// excluded endpoints are captured by the nudged positions, so the result
// undershoots the true supremum by at most 2 * max-slope * kNudge.
Rat grid_osc(const PiecewiseMap& T, const Domain& supp, const Rat& delta, int grid) {
  std::vector<Rat> xs;
  const Rat lo = supp.inf(), hi = supp.sup();
  for (int i = 0; i <= grid; ++i) xs.push_back(lo + (hi - lo) * Rat(i, grid));
  for (const auto& piece : T.pieces()) {
    for (const auto& seg : std::get<std::vector<AffineSegment>>(piece.body)) {
      for (const Rat& b : {seg.interval.lo(), seg.interval.hi()}) {
        for (const Rat& s : {Rat(b - delta), b, Rat(b + delta)}) {
          // asymmetric nudges: a supremum on the |x - x'| = delta line needs
          // pairs like (s + 2h, s' + h) to stay strictly inside the window
          for (int k = -2; k <= 2; ++k) xs.push_back(s + k * kNudge);
        }
      }
    }
  }
  std::vector<std::pair<Rat, Rat>> pts;
  for (const Rat& x : xs)
    if (supp.contains(x) && T.defined_at(x)) pts.emplace_back(x, T.eval(x));
  Rat best(0);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i; j < pts.size(); ++j) {
      if (rat_abs(pts[i].first - pts[j].first) >= delta) continue;
      best = rat_max(best, rat_abs(pts[i].second - pts[j].second));
    }
  return best;
}

PiecewiseMap rand_affine_map(Rng& rng, int segments) {
  std::vector<Rat> cuts = distinct_sorted_rats(rng, segments + 1, 16);
  std::vector<AffineSegment> segs;
  for (int k = 0; k < segments; ++k)
    segs.push_back(AffineSegment{Interval::closed(cuts[k], cuts[k + 1]),
                                 rand_rat(rng, 4, -4, 4), rand_rat(rng, 4, -2, 2)});
  return PiecewiseMap::from_segments(std::move(segs));
}

}  // namespace

TEST_CASE("osc_map: tent and rearranged maps at delta = 1/10") {
  Counterexample cx = make_counterexample(Rat(1, 10));
  Domain supp = cx.instance.mu.support();
  CHECK(osc_map(cx.u_map, supp, Rat(1, 10)) == Rat(1, 5));
  CHECK(osc_map(cx.monotone, supp, Rat(1, 10)) == Rat(2, 5));
}

TEST_CASE("osc_map: identity's supremum is delta itself") {
  PiecewiseMap id = PiecewiseMap::identity(Interval::closed(Rat(0), Rat(1)));
  CHECK(osc_map(id, Domain::unit(), Rat(1, 10)) == Rat(1, 10));
  CHECK_THROWS_AS(osc_map(id, Domain::unit(), Rat(0)), DomainError);
}

TEST_CASE("osc_map: windows do not cross gaps wider than delta") {
  // support split [0, 1/4] and [3/4, 1]; a jump between components is unseen
  Domain split({Interval::closed(Rat(0), Rat(1, 4)), Interval::closed(Rat(3, 4), Rat(1))});
  PiecewiseMap step = PiecewiseMap::from_segments(
      {AffineSegment{Interval::closed(Rat(0), Rat(1, 4)), Rat(0), Rat(0)},
       AffineSegment{Interval::closed(Rat(3, 4), Rat(1)), Rat(0), Rat(5)}});
  CHECK(osc_map(step, split, Rat(1, 4)) == Rat(0));
  // but a window wider than the gap pays the jump
  CHECK(osc_map(step, split, Rat(3, 5)) == Rat(5));
}

TEST_CASE("osc_map matches the dense-grid brute force on random maps") {
  Rng rng(51);
  for (int round = 0; round < 40; ++round) {
    PiecewiseMap T = rand_affine_map(rng, rand_int(rng, 1, 4));
    Rat lo = T.pieces().front().interval.lo();
    Rat hi = T.pieces().back().interval.hi();
    Domain supp({Interval::closed(lo, hi)});
    Rat delta(rand_int(rng, 1, 5), 10);
    Rat exact = osc_map(T, supp, delta);
    Rat coarse = grid_osc(T, supp, delta, 120);
    CHECK(coarse <= exact);
    Rat slope_bound(0);
    for (const auto& p : T.pieces())
      for (const auto& s : std::get<std::vector<AffineSegment>>(p.body))
        slope_bound = rat_max(slope_bound, rat_abs(s.slope));
    CHECK(exact - coarse <= 4 * slope_bound * kNudge);
  }
}

TEST_CASE("osc_map: scaling and delta-monotonicity") {
  Rng rng(52);
  for (int round = 0; round < 40; ++round) {
    PiecewiseMap T = rand_affine_map(rng, rand_int(rng, 1, 4));
    Rat lo = T.pieces().front().interval.lo();
    Rat hi = T.pieces().back().interval.hi();
    Domain supp({Interval::closed(lo, hi)});
    Rat d1(rand_int(rng, 1, 4), 10), d2 = d1 + Rat(rand_int(rng, 1, 4), 10);

    CHECK(osc_map(T, supp, d1) <= osc_map(T, supp, d2));

    Rat lambda = rand_rat(rng, 5, -3, 3);
    std::vector<AffineSegment> scaled;
    for (const auto& s : std::get<std::vector<AffineSegment>>(T.pieces()[0].body))
      scaled.push_back(AffineSegment{s.interval, s.slope * lambda, s.intercept * lambda});
    PiecewiseMap lambdaT = PiecewiseMap::from_segments(std::move(scaled));
    CHECK(osc_map(lambdaT, supp, d1) == rat_abs(lambda) * osc_map(T, supp, d1));
  }
}

TEST_CASE("osc_plan: basics") {
  CHECK_THROWS_AS(osc_plan(SupportSet{}, Rat(1, 10)), ContractError);

  // fibers at the same x interact regardless of delta
  SupportSet fiber = SupportSet::of({SupportPoint{Rat(0), Rat(0)}, SupportPoint{Rat(0), Rat(1)}});
  CHECK(osc_plan(fiber, Rat(1, 1000)) == 1);

  // all x-gaps >= delta: nothing interacts
  SupportSet spread = SupportSet::of({SupportPoint{Rat(0), Rat(0)}, SupportPoint{Rat(1, 2), Rat(5)},
                                      SupportPoint{Rat(1), Rat(-3)}});
  CHECK(osc_plan(spread, Rat(1, 2)) == 0);
  CHECK(osc_plan(spread, Rat(501, 1000)) == 8);
}

TEST_CASE("osc_map on an atom grid equals osc_plan of the graph") {
  Rng rng(53);
  for (int round = 0; round < 60; ++round) {
    int n = rand_int(rng, 2, 7);
    std::vector<Rat> xs = distinct_sorted_rats(rng, n, 40);
    AtomicTable table;
    std::vector<SupportPoint> pts;
    for (const Rat& x : xs) {
      Rat y = rand_rat(rng, 12, -2, 2);
      table.entries.emplace_back(x, y);
      pts.push_back(SupportPoint{x, y});
    }
    PiecewiseMap T = PiecewiseMap::from_table(table);
    Rat delta(rand_int(rng, 1, 6), 10);
    CHECK(osc_map(T, Domain::points(xs), delta) == osc_plan(SupportSet::of(pts), delta));
  }
}
