#include <doctest.h>

#include "oscot/interval_set.hpp"
#include "test_support.hpp"

using namespace oscot;

namespace {

Interval iv(long long a, long long b, bool lo_open = false, bool hi_open = false) {
  return Interval(Rat(a, 10), Rat(b, 10), lo_open, hi_open);
}

// Membership probe: endpoints of all involved intervals nudged both ways.
std::vector<Rat> probes(const std::vector<Interval>& ivs) {
  std::vector<Rat> out;
  const Rat eps(1, 1000000);
  for (const auto& i : ivs) {
    for (const Rat& b : {i.lo(), i.hi()}) {
      out.push_back(b - eps);
      out.push_back(b);
      out.push_back(b + eps);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("interval invariants") {
  CHECK_THROWS_AS(Interval(Rat(1), Rat(0)), ValidationError);
  CHECK_THROWS_AS(Interval(Rat(1), Rat(1), true, false), ValidationError);
  CHECK(Interval::point(Rat(2)).contains(Rat(2)));
  CHECK_FALSE(Interval::open(Rat(0), Rat(1)).contains(Rat(0)));
  CHECK(Interval(Rat(0), Rat(1), false, true).contains(Rat(0)));
  CHECK_FALSE(Interval(Rat(0), Rat(1), false, true).contains(Rat(1)));
}

TEST_CASE("union merges touching pieces with complementary flags") {
  IntervalSet a(iv(0, 5, false, true));   // [0, 1/2)
  IntervalSet b(iv(5, 10));               // [1/2, 1]
  IntervalSet u = a.unite(b);
  REQUIRE(u.components().size() == 1);
  CHECK(u.components()[0] == iv(0, 10));

  // (0, 1/2) and (1/2, 1) must stay apart: 1/2 is missing
  IntervalSet c(iv(0, 5, true, true));
  IntervalSet d(iv(5, 10, true, true));
  CHECK(c.unite(d).components().size() == 2);
}

TEST_CASE("set algebra agrees with pointwise membership") {
  testing::Rng rng(11);
  for (int round = 0; round < 300; ++round) {
    auto rand_parts = [&](int max_parts) {
      std::vector<Interval> parts;
      for (int p = testing::rand_int(rng, 1, max_parts); p > 0; --p) {
        Rat a = testing::rand_rat(rng, 8, 0, 2);
        Rat b = testing::rand_rat(rng, 8, 0, 2);
        if (b < a) std::swap(a, b);
        bool lo_open = a != b && testing::rand_int(rng, 0, 1) == 0;
        bool hi_open = a != b && testing::rand_int(rng, 0, 1) == 0;
        parts.push_back(Interval(a, b, lo_open, hi_open));
      }
      return parts;
    };
    std::vector<Interval> pa = rand_parts(3), pb = rand_parts(3);
    IntervalSet A(pa), B(pb);

    std::vector<Interval> all = pa;
    all.insert(all.end(), pb.begin(), pb.end());
    auto in = [](const std::vector<Interval>& parts, const Rat& x) {
      for (const auto& p : parts)
        if (p.contains(x)) return true;
      return false;
    };
    for (const Rat& x : probes(all)) {
      bool ia = in(pa, x), ib = in(pb, x);
      CHECK(A.unite(B).contains(x) == (ia || ib));
      CHECK(A.intersect(B).contains(x) == (ia && ib));
      CHECK(A.subtract(B).contains(x) == (ia && !ib));
    }
  }
}

TEST_CASE("dilate_open is the open Minkowski sum") {
  IntervalSet s(iv(0, 2));
  IntervalSet d = s.dilate_open(Rat(1, 10));
  CHECK(d.contains(Rat(-1, 100)));
  CHECK_FALSE(d.contains(Rat(-1, 10)));  // open end
  CHECK(d.contains(Rat(29, 100)));
  CHECK_FALSE(d.contains(Rat(3, 10)));

  // a nearby dilated point merges, a distant one stays apart
  IntervalSet two({iv(0, 2), Interval::point(Rat(1, 4))});
  CHECK(two.dilate_open(Rat(1, 10)).components().size() == 1);
  IntervalSet far({iv(0, 2), Interval::point(Rat(1))});
  CHECK(far.dilate_open(Rat(1, 10)).components().size() == 2);
}

TEST_CASE("measure ignores degenerate components") {
  IntervalSet s({iv(0, 4), Interval::point(Rat(7, 10))});
  CHECK(s.measure() == Rat(4, 10));
}

TEST_CASE("domain normalizes, orders and validates") {
  Domain d({Interval::closed(Rat(2), Rat(3)), Interval::closed(Rat(0), Rat(1))});
  CHECK(d.components().size() == 2);
  CHECK(d.inf() == 0);
  CHECK(d.sup() == 3);
  CHECK(d.diameter() == 3);
  CHECK(d.contains(Rat(5, 2)));
  CHECK_FALSE(d.contains(Rat(3, 2)));
  CHECK_THROWS_AS(Domain({Interval(Rat(0), Rat(1), true, false)}), ValidationError);
  CHECK_THROWS_AS(Domain(std::vector<Interval>{}), ValidationError);

  Domain pts = Domain::points({Rat(1), Rat(0), Rat(1, 2)});
  CHECK(pts.components().size() == 3);
  CHECK(pts.as_set().is_finite_point_set());
}
