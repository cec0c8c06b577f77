#pragma once

#include <variant>
#include <vector>

#include "oscot/interval_set.hpp"

namespace oscot {

enum class Direction { Inc, Dec };

inline const char* to_cstring(Direction d) { return d == Direction::Inc ? "inc" : "dec"; }

/// T(x) = slope*x + intercept on `interval`.
struct AffineSegment {
  Interval interval;
  Rat slope;
  Rat intercept;

  Rat eval(const Rat& x) const { return slope * x + intercept; }

  friend bool operator==(const AffineSegment& a, const AffineSegment& b) = default;
};

/// Pointwise assignment for atomic sources.
struct AtomicTable {
  std::vector<std::pair<Rat, Rat>> entries;  // (x, T(x)), sorted by x

  friend bool operator==(const AtomicTable& a, const AtomicTable& b) = default;
};

using MapBody = std::variant<std::vector<AffineSegment>, AtomicTable>;

/// One monotone stretch of a transport map.
struct MapPiece {
  Interval interval;
  Direction direction;
  MapBody body;

  friend bool operator==(const MapPiece& a, const MapPiece& b) = default;
};

/// A transport map as an ordered list of monotone pieces; each piece is
/// either monotone piecewise-affine or an atomic assignment table.
class PiecewiseMap {
 public:
  explicit PiecewiseMap(std::vector<MapPiece> pieces);

  /// Single increasing piece from affine segments.
  static PiecewiseMap from_segments(std::vector<AffineSegment> segments,
                                    Direction direction = Direction::Inc);
  static PiecewiseMap identity(const Interval& iv);
  static PiecewiseMap constant(const Interval& iv, const Rat& y);
  static PiecewiseMap from_table(AtomicTable table);

  const std::vector<MapPiece>& pieces() const { return pieces_; }
  size_t piece_count() const { return pieces_.size(); }

  bool defined_at(const Rat& x) const;
  Rat eval(const Rat& x) const;

  /// Points of `supp` where the map is undefined.
  IntervalSet uncovered(const Domain& supp) const;

  /// True when the map is defined at every point of `supp` (for atomic
  /// tables: at every degenerate component).
  bool covers(const Domain& supp) const { return uncovered(supp).empty(); }

  /// Checks each piece's body against its declared direction
  /// (slopes >= 0 resp. <= 0, segment values ordered, table ordered).
  bool directions_consistent() const;

  friend bool operator==(const PiecewiseMap& a, const PiecewiseMap& b) {
    return a.pieces_ == b.pieces_;
  }

 private:
  std::vector<MapPiece> pieces_;
};

/// Canonical form of an affine body: merges touching segments with the same
/// slope/intercept. Used for exact map equality in tests and round-trips.
std::vector<AffineSegment> canonical_segments(std::vector<AffineSegment> segments);

}  // namespace oscot
