#include <doctest.h>

#include "oscot/counterexample.hpp"
#include "oscot/map_builder.hpp"
#include "test_support.hpp"

using namespace oscot;
using namespace oscot::testing;

TEST_CASE("monotone_map reproduces the four-segment rearrangement exactly") {
  Counterexample cx = make_counterexample(Rat(1, 10));
  std::vector<AffineSegment> segs =
      canonical_segments(monotone_map(cx.instance.mu, cx.instance.nu, Direction::Inc));
  REQUIRE(segs.size() == 4);

  CHECK(segs[0].slope == 1);
  CHECK(segs[0].intercept == 0);
  CHECK(segs[0].interval.lo() == 0);
  CHECK(segs[0].interval.hi() == Rat(1, 4));

  CHECK(segs[1].slope == Rat(1, 4));
  CHECK(segs[1].intercept == Rat(3, 16));  // 1/4 + (x - 1/4)/4
  CHECK(segs[1].interval.hi() == Rat(3, 4));

  CHECK(segs[2].slope == 1);
  CHECK(segs[2].intercept == Rat(-3, 8));  // x - 3/8
  CHECK(segs[2].interval.hi() == Rat(7, 8));

  CHECK(segs[3].slope == 4);
  CHECK(segs[3].intercept == -3);  // 1/2 + 4(x - 7/8)
  CHECK(segs[3].interval.hi() == 1);

  // continuity at the breakpoints
  for (size_t i = 0; i + 1 < segs.size(); ++i)
    CHECK(segs[i].eval(segs[i].interval.hi()) == segs[i + 1].eval(segs[i + 1].interval.lo()));
}

TEST_CASE("monotone_map: identity and reflection") {
  Measure1D u = Measure1D::uniform(Interval::closed(Rat(0), Rat(1)));
  auto inc = canonical_segments(monotone_map(u, u, Direction::Inc));
  REQUIRE(inc.size() == 1);
  CHECK(inc[0].slope == 1);
  CHECK(inc[0].intercept == 0);

  auto dec = canonical_segments(monotone_map(u, u, Direction::Dec));
  REQUIRE(dec.size() == 1);
  CHECK(dec[0].slope == -1);
  CHECK(dec[0].intercept == 1);
}

TEST_CASE("monotone_map: contract errors") {
  Measure1D u = Measure1D::uniform(Interval::closed(Rat(0), Rat(1)));
  Measure1D atoms = Measure1D::atomic({Atom{Rat(0), Rat(1)}});
  CHECK_THROWS_AS(monotone_map(atoms, u, Direction::Inc), ContractError);
  Measure1D half = restrict(u, Interval::closed(Rat(0), Rat(1, 2))).part;
  CHECK_THROWS_AS(monotone_map(half, u, Direction::Inc), ContractError);  // masses differ
}

TEST_CASE("monotone_map pushes mu_j onto nu_j exactly, both directions") {
  Rng rng(71);
  for (int round = 0; round < 60; ++round) {
    Measure1D mu = rand_density(rng, rand_int(rng, 1, 4));
    Measure1D nu = rand_density(rng, rand_int(rng, 1, 4));
    for (Direction dir : {Direction::Inc, Direction::Dec}) {
      auto segs = monotone_map(mu, nu, dir);
      PiecewiseMap T = PiecewiseMap::from_segments(segs, dir);
      CHECK(T.directions_consistent());
      CHECK(measures_equal(pushforward(mu, T), nu));
    }
  }
}

TEST_CASE("monotone_map onto an atomic target: flat steps, exact image") {
  Rng rng(72);
  for (int round = 0; round < 40; ++round) {
    Measure1D mu = rand_density(rng, rand_int(rng, 1, 3));
    int n = rand_int(rng, 1, 5);
    std::vector<Atom> atoms;
    for (const Rat& y : distinct_sorted_rats(rng, n, 20)) atoms.push_back(Atom{y, Rat(1, n)});
    Measure1D nu = Measure1D::atomic(atoms);
    auto segs = monotone_map(mu, nu, Direction::Inc);
    for (const auto& s : segs) CHECK(s.slope == 0);
    PiecewiseMap T = PiecewiseMap::from_segments(segs, Direction::Inc);
    CHECK(measures_equal(pushforward(mu, T), nu));
  }
}

TEST_CASE("verify_map: tent map passes, the increasing rearrangement fails the bound") {
  Counterexample cx = make_counterexample(Rat(1, 10));

  VerifyReport good = verify_map(cx.instance, cx.u_map, Rat(1, 5));
  CHECK(good.pushforward_ok);
  CHECK(good.containment_ok);
  CHECK(good.osc_ok);
  CHECK(good.osc_value == Rat(1, 5));
  CHECK(good.all_ok());

  VerifyReport bad = verify_map(cx.instance, cx.monotone, Rat(1, 5));
  CHECK(bad.pushforward_ok);
  CHECK_FALSE(bad.osc_ok);
  CHECK(bad.osc_value == Rat(2, 5));

  // identity map with mu = nu at K = delta
  Measure1D u = Measure1D::uniform(Interval::closed(Rat(0), Rat(1)));
  Instance id_inst{Domain::unit(), Domain::unit(), Rat(1, 10), u, u};
  VerifyReport id_rep = verify_map(
      id_inst, PiecewiseMap::identity(Interval::closed(Rat(0), Rat(1))), Rat(1, 10));
  CHECK(id_rep.all_ok());
}

TEST_CASE("build_map: single-atom target gives a constant map") {
  Measure1D u = Measure1D::uniform(Interval::closed(Rat(0), Rat(1)));
  Measure1D point = Measure1D::atomic({Atom{Rat(1, 2), Rat(1)}});
  Instance inst{Domain::unit(), Domain::unit(), Rat(1, 10), u, point};
  SolveOptions opts;
  opts.quantize_n = 4;
  SolveResult r = solve(inst, opts);
  CHECK(r.K == 0);
  BuildResult b = build_map_detailed(inst, r);
  CHECK(b.lift_cost == 0);
  CHECK(osc_map(b.map, inst.mu.support(), inst.delta) == 0);
  CHECK(measures_equal(pushforward(inst.mu, b.map), point));
}

TEST_CASE("build_map: mu = nu uniform gives the identity") {
  Measure1D u = Measure1D::uniform(Interval::closed(Rat(0), Rat(1)));
  Instance inst{Domain::unit(), Domain::unit(), Rat(1, 4), u, u};
  SolveOptions opts;
  opts.quantize_n = 6;
  SolveResult r = solve(inst, opts);
  BuildResult b = build_map_detailed(inst, r);
  CHECK(measures_equal(pushforward(u, b.map), u));
  // every piece is increasing with slope-1 segments composing the identity
  for (const auto& piece : b.map.pieces())
    for (const auto& seg : std::get<std::vector<AffineSegment>>(piece.body)) {
      CHECK(seg.slope == 1);
      CHECK(seg.intercept == 0);
    }
}

TEST_CASE("build_map: pipeline invariants on random density instances") {
  Rng rng(73);
  int rounds = 0;
  for (int round = 0; round < 20; ++round) {
    Instance inst = rand_density_instance(rng, rand_int(rng, 1, 3), rand_int(rng, 1, 3),
                                          Rat(rand_int(rng, 1, 4), 10));
    SolveOptions opts;
    opts.quantize_n = 6;
    SolveResult r = solve(inst, opts);
    BuildResult b = build_map_detailed(inst, r);
    ++rounds;

    // exact image
    CHECK(measures_equal(pushforward(inst.mu, b.map), inst.nu));
    // the graph leaves the enlarged strip in at most finitely many points
    GraphContainment gc = contains_graph(b.enlarged, b.map, inst.mu);
    CHECK(gc.almost_everywhere());
    CHECK(gc.except_finitely_many());
    // oscillation pays at most the lifted plan's cost
    CHECK(osc_map(b.map, inst.mu.support(), inst.delta) <= b.lift_cost);
    // piece count within the structural bound
    Rat L = inst.mu.support().diameter();
    CHECK(Rat(static_cast<long long>(b.map.piece_count())) <= 3 * (L / (2 * inst.delta)) + 2);
    CHECK(b.map.directions_consistent());
  }
  CHECK(rounds == 20);
}

TEST_CASE("build_map: contract errors") {
  Counterexample cx = make_counterexample(Rat(1, 10));
  SolveOptions opts;
  opts.quantize_n = 4;
  SolveResult r = solve(cx.instance, opts);

  Instance atomic_source = cx.instance;
  atomic_source.mu = Measure1D::atomic({Atom{Rat(1, 2), Rat(1)}});
  CHECK_THROWS_AS(build_map(atomic_source, r), ContractError);

  Instance other = cx.instance;
  other.mu = Measure1D::uniform(Interval::closed(Rat(0), Rat(1)));
  CHECK_THROWS_AS(build_map(other, r), ContractError);  // result from another instance
}
