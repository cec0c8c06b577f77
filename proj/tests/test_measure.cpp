#include <doctest.h>

#include <cmath>

#include "oscot/counterexample.hpp"
#include "oscot/measure.hpp"
#include "test_support.hpp"

using namespace oscot;

namespace {

Measure1D paper_mu() {
  return Measure1D::density({
      DensityPiece{Interval::closed(Rat(0), Rat(1, 4)), Rat(8, 5)},
      DensityPiece{Interval::closed(Rat(1, 4), Rat(3, 4)), Rat(2, 5)},
      DensityPiece{Interval::closed(Rat(3, 4), Rat(1)), Rat(8, 5)},
  });
}

Measure1D paper_nu() {
  return Measure1D::density({
      DensityPiece{Interval::closed(Rat(0), Rat(1, 2)), Rat(8, 5)},
      DensityPiece{Interval::closed(Rat(1, 2), Rat(1)), Rat(2, 5)},
  });
}

// Independent quantile oracle: bisection on a double-valued cdf down to
// 1e-12, rationalized by continued fractions, then verified exactly against
// the exact cdf (generalized-inverse property).
double cdf_double(const Measure1D& m, double x) {
  double total = 0;
  for (const auto& p : m.density_pieces()) {
    double lo = to_double(p.interval.lo()), hi = to_double(p.interval.hi());
    double d = to_double(p.density);
    if (x >= hi)
      total += (hi - lo) * d;
    else if (x > lo)
      total += (x - lo) * d;
  }
  return total;
}

Rat rationalize(double x, long long max_den = 1000000) {
  // continued fractions with a denominator cap
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    long long a = static_cast<long long>(std::floor(v));
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = v - static_cast<double>(a);
    if (rem < 1e-13) break;
    v = 1.0 / rem;
  }
  return Rat(p1, q1);
}

Rat oracle_quantile(const Measure1D& m, const Rat& level) {
  double p = to_double(level);
  double lo = to_double(m.support().inf()) - 1.0, hi = to_double(m.support().sup());
  for (int it = 0; it < 100; ++it) {
    double mid = (lo + hi) / 2;
    if (cdf_double(m, mid) >= p)
      hi = mid;
    else
      lo = mid;
  }
  Rat q = rationalize(hi);
  // exact correction: the generalized inverse must satisfy cdf(q) >= level
  // with cdf strictly below just to the left
  const Rat step(1, 1000000);
  while (cdf(m, q) < level) q += step;
  while (q - step >= m.support().inf() && cdf(m, q - step) >= level) q -= step;
  REQUIRE(cdf(m, q) >= level);
  return q;
}

}  // namespace

TEST_CASE("cdf: worked examples") {
  CHECK(cdf(paper_mu(), Rat(1, 4)) == Rat(2, 5));  // 8/5 * 1/4
  CHECK(cdf(Measure1D::uniform(Interval::closed(Rat(0), Rat(1))), Rat(1, 3)) == Rat(1, 3));
  Measure1D two = Measure1D::atomic({Atom{Rat(0), Rat(1, 2)}, Atom{Rat(1), Rat(1, 2)}});
  CHECK(cdf(two, Rat(1, 2)) == Rat(1, 2));
  CHECK(cdf(two, Rat(-1)) == 0);
  CHECK(cdf(two, Rat(2)) == 1);
}

TEST_CASE("cdf is nondecreasing and right-continuous at breakpoints") {
  testing::Rng rng(21);
  const Rat eps(1, 1000000);
  for (int round = 0; round < 100; ++round) {
    Measure1D m = round % 2 == 0 ? testing::rand_density(rng, testing::rand_int(rng, 1, 4))
                                 : Measure1D::atomic([&] {
                                     std::vector<Atom> atoms;
                                     int n = testing::rand_int(rng, 1, 6);
                                     auto xs = testing::distinct_sorted_rats(rng, n, 30);
                                     for (const Rat& x : xs) atoms.push_back(Atom{x, Rat(1, n)});
                                     return atoms;
                                   }());
    std::vector<Rat> breakpoints;
    if (m.is_atomic())
      for (const auto& a : m.atoms()) breakpoints.push_back(a.x);
    else
      for (const auto& p : m.density_pieces()) {
        breakpoints.push_back(p.interval.lo());
        breakpoints.push_back(p.interval.hi());
      }
    for (const Rat& b : breakpoints) {
      CHECK(cdf(m, b - eps) <= cdf(m, b));
      CHECK(cdf(m, b) <= cdf(m, b + eps));
      // right continuity: no mass in (b, b + eps] for eps below the atom gap
      Rat right = cdf(m, b + eps);
      Rat here = cdf(m, b);
      if (m.is_atomic()) CHECK(right == here);
    }
  }
}

TEST_CASE("quantile: worked examples") {
  CHECK(quantile(Measure1D::uniform(Interval::closed(Rat(0), Rat(1))), Rat(1, 4)) == Rat(1, 4));
  CHECK(quantile(paper_nu(), Rat(4, 5)) == Rat(1, 2));  // 8/5 * 1/2 = 4/5
  Measure1D two = Measure1D::atomic({Atom{Rat(0), Rat(1, 2)}, Atom{Rat(1), Rat(1, 2)}});
  CHECK(quantile(two, Rat(3, 4)) == Rat(1));
  CHECK(quantile(two, Rat(1, 2)) == Rat(0));
  CHECK_THROWS_AS(quantile(two, Rat(2)), DomainError);
  CHECK_THROWS_AS(quantile(two, Rat(-1, 2)), DomainError);
}

TEST_CASE("quantile/cdf inversion properties") {
  testing::Rng rng(22);
  for (int round = 0; round < 60; ++round) {
    Measure1D m = testing::rand_density(rng, testing::rand_int(rng, 1, 4));
    for (int k = 0; k <= 12; ++k) {
      Rat p(k, 12);
      Rat q = quantile(m, p);
      CHECK(cdf(m, q) >= p);
      if (p > 0) CHECK(cdf(m, q) == p);  // atomless: exact hit
    }
  }
}

TEST_CASE("quantize: uniform midpoints") {
  Measure1D u = Measure1D::uniform(Interval::closed(Rat(0), Rat(1)));
  Measure1D q = quantize(u, 4);
  REQUIRE(q.atoms().size() == 4);
  CHECK(q.atoms()[0] == Atom{Rat(1, 8), Rat(1, 4)});
  CHECK(q.atoms()[1] == Atom{Rat(3, 8), Rat(1, 4)});
  CHECK(q.atoms()[2] == Atom{Rat(5, 8), Rat(1, 4)});
  CHECK(q.atoms()[3] == Atom{Rat(7, 8), Rat(1, 4)});
}

TEST_CASE("quantize of the edge-heavy density matches the bisection oracle") {
  Measure1D mu = paper_mu();
  Measure1D q = quantize(mu, 5);
  REQUIRE(q.atoms().size() == 5);
  for (int i = 1; i <= 5; ++i) {
    Rat level(2 * i - 1, 10);
    CHECK(q.atoms()[i - 1].x == oracle_quantile(mu, level));
    CHECK(q.atoms()[i - 1].mass == Rat(1, 5));
  }
}

TEST_CASE("quantize: atomic fixed point and CDF closeness") {
  testing::Rng rng(23);
  for (int round = 0; round < 40; ++round) {
    int n = testing::rand_int(rng, 1, 6);
    std::vector<Atom> atoms;
    for (const Rat& x : testing::distinct_sorted_rats(rng, n, 30)) atoms.push_back(Atom{x, Rat(1, n)});
    Measure1D m = Measure1D::atomic(atoms);
    CHECK(measures_equal(quantize(m, n), m));
  }
  for (int round = 0; round < 40; ++round) {
    Measure1D m = testing::rand_density(rng, testing::rand_int(rng, 1, 4));
    int n = testing::rand_int(rng, 1, 9);
    Measure1D q = quantize(m, n);
    CHECK(q.total_mass() == 1);
    // sup-norm CDF gap at every breakpoint of both measures
    std::vector<Rat> xs;
    for (const auto& a : q.atoms()) xs.push_back(a.x);
    for (const auto& p : m.density_pieces()) {
      xs.push_back(p.interval.lo());
      xs.push_back(p.interval.hi());
    }
    for (const Rat& x : xs) CHECK(rat_abs(cdf(q, x) - cdf(m, x)) <= Rat(1, n));
  }
}

TEST_CASE("quantile_cells tile the support hull") {
  testing::Rng rng(24);
  for (int round = 0; round < 30; ++round) {
    Measure1D m = testing::rand_density(rng, testing::rand_int(rng, 1, 4));
    int n = testing::rand_int(rng, 1, 8);
    auto cells = quantile_cells(m, n);
    REQUIRE(static_cast<int>(cells.size()) == n);
    CHECK(cells.front().lo() == m.support().inf());
    CHECK(cells.back().hi() == m.support().sup());
    for (int i = 0; i + 1 < n; ++i) CHECK(cells[i].hi() == cells[i + 1].lo());
    for (const auto& c : cells)
      CHECK(cdf(m, c.hi()) - cdf(m, c.lo()) == Rat(1, n));
  }
}

TEST_CASE("restrict: worked examples") {
  auto [part, mass] = restrict(paper_mu(), Interval::closed(Rat(0), Rat(1, 4)));
  CHECK(mass == Rat(2, 5));
  REQUIRE(part.is_density());
  REQUIRE(part.density_pieces().size() == 1);
  CHECK(part.density_pieces()[0].density == Rat(8, 5));

  auto full = restrict(paper_mu(), Interval::closed(Rat(-1), Rat(2)));
  CHECK(full.mass == 1);
  CHECK(measures_equal(full.part, paper_mu()));

  auto none = restrict(paper_mu(), Interval::closed(Rat(2), Rat(3)));
  CHECK(none.mass == 0);
  CHECK(none.part.is_empty());
}

TEST_CASE("restrictions over a partition recover the measure") {
  testing::Rng rng(25);
  for (int round = 0; round < 50; ++round) {
    Measure1D m = testing::rand_density(rng, testing::rand_int(rng, 1, 4));
    Rat mid = testing::rand_rat(rng, 16);
    auto left = restrict(m, Interval(Rat(-10), mid, false, false));
    auto right = restrict(m, Interval(mid, Rat(10), true, false));
    CHECK(left.mass + right.mass == 1);
    std::vector<DensityPiece> glued;
    if (left.part.is_density())
      for (const auto& p : left.part.density_pieces()) glued.push_back(p);
    if (right.part.is_density())
      for (const auto& p : right.part.density_pieces()) glued.push_back(p);
    CHECK(measures_equal(Measure1D::density(glued), m));
  }
}

TEST_CASE("pushforward: tent map sends the edge-heavy density to nu") {
  Counterexample cx = make_counterexample(Rat(1, 10));
  CHECK(measures_equal(pushforward(cx.instance.mu, cx.u_map), cx.instance.nu));
}

TEST_CASE("pushforward: identity and affine scaling") {
  Measure1D u = Measure1D::uniform(Interval::closed(Rat(0), Rat(1)));
  CHECK(measures_equal(pushforward(u, PiecewiseMap::identity(Interval::closed(Rat(0), Rat(1)))), u));

  PiecewiseMap twice = PiecewiseMap::from_segments(
      {AffineSegment{Interval::closed(Rat(0), Rat(1)), Rat(2), Rat(0)}});
  Measure1D image = pushforward(u, twice);
  REQUIRE(image.is_density());
  REQUIRE(image.density_pieces().size() == 1);
  CHECK(image.density_pieces()[0].interval == Interval::closed(Rat(0), Rat(2)));
  CHECK(image.density_pieces()[0].density == Rat(1, 2));

  Measure1D atoms = Measure1D::atomic({Atom{Rat(0), Rat(1, 2)}, Atom{Rat(1, 2), Rat(1, 2)}});
  Measure1D moved = pushforward(atoms, twice);
  CHECK(moved.atoms()[1].x == 1);
}

TEST_CASE("pushforward preserves mass and rejects uncovered mass") {
  testing::Rng rng(26);
  for (int round = 0; round < 40; ++round) {
    Measure1D m = testing::rand_density(rng, testing::rand_int(rng, 1, 3));
    PiecewiseMap id = PiecewiseMap::identity(Interval::closed(Rat(0), Rat(1)));
    CHECK(pushforward(m, id).total_mass() == 1);
  }
  Measure1D u = Measure1D::uniform(Interval::closed(Rat(0), Rat(1)));
  PiecewiseMap partial =
      PiecewiseMap::from_segments({AffineSegment{Interval::closed(Rat(0), Rat(1, 2)), Rat(1), Rat(0)}});
  CHECK_THROWS_AS(pushforward(u, partial), ContractError);

  // an everywhere-flat map condenses density into atoms
  PiecewiseMap flat = PiecewiseMap::constant(Interval::closed(Rat(0), Rat(1)), Rat(3));
  Measure1D condensed = pushforward(u, flat);
  REQUIRE(condensed.is_atomic());
  CHECK(condensed.atoms() == std::vector<Atom>{Atom{Rat(3), Rat(1)}});

  // but a half-flat map would mix atoms with density: not representable
  PiecewiseMap mixed = PiecewiseMap::from_segments(
      {AffineSegment{Interval(Rat(0), Rat(1, 2), false, true), Rat(1), Rat(0)},
       AffineSegment{Interval::closed(Rat(1, 2), Rat(1)), Rat(0), Rat(3)}});
  CHECK_THROWS_AS(pushforward(u, mixed), ContractError);
}

TEST_CASE("measures_equal is canonical-form equality") {
  Counterexample cx = make_counterexample(Rat(1, 10));
  CHECK(measures_equal(cx.instance.nu, pushforward(cx.instance.mu, cx.u_map)));

  Measure1D whole = Measure1D::density({DensityPiece{Interval::closed(Rat(0), Rat(1)), Rat(1)}});
  Measure1D split = Measure1D::density({DensityPiece{Interval::closed(Rat(0), Rat(1, 2)), Rat(1)},
                                        DensityPiece{Interval::closed(Rat(1, 2), Rat(1)), Rat(1)}});
  CHECK(measures_equal(whole, split));

  CHECK_FALSE(measures_equal(Measure1D::atomic({Atom{Rat(0), Rat(1)}}),
                             Measure1D::atomic({Atom{Rat(1), Rat(1)}})));
  CHECK_FALSE(measures_equal(whole, Measure1D::atomic({Atom{Rat(0), Rat(1)}})));
}
