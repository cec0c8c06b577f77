#include "oscot/counterexample.hpp"

namespace oscot {

Counterexample make_counterexample(const Rat& delta) {
  if (delta <= 0) throw DomainError("counterexample requires delta > 0");

  Measure1D mu = Measure1D::density({
      DensityPiece{Interval::closed(Rat(0), Rat(1, 4)), Rat(8, 5)},
      DensityPiece{Interval::closed(Rat(1, 4), Rat(3, 4)), Rat(2, 5)},
      DensityPiece{Interval::closed(Rat(3, 4), Rat(1)), Rat(8, 5)},
  });
  Measure1D nu = Measure1D::density({
      DensityPiece{Interval::closed(Rat(0), Rat(1, 2)), Rat(8, 5)},
      DensityPiece{Interval::closed(Rat(1, 2), Rat(1)), Rat(2, 5)},
  });

  Domain unit = Domain::unit();
  Instance inst{unit, unit, delta, mu, nu};
  inst.validate();

  PiecewiseMap u_map({
      MapPiece{Interval::closed(Rat(0), Rat(1, 2)), Direction::Inc,
               std::vector<AffineSegment>{
                   AffineSegment{Interval::closed(Rat(0), Rat(1, 2)), Rat(2), Rat(0)}}},
      MapPiece{Interval(Rat(1, 2), Rat(1), true, false), Direction::Dec,
               std::vector<AffineSegment>{
                   AffineSegment{Interval(Rat(1, 2), Rat(1), true, false), Rat(-2), Rat(2)}}},
  });

  PiecewiseMap monotone = PiecewiseMap::from_segments(monotone_map(mu, nu, Direction::Inc));

  return Counterexample{std::move(inst), std::move(u_map), std::move(monotone)};
}

}  // namespace oscot
