#pragma once

#include <optional>
#include <vector>

#include "oscot/interval_set.hpp"

namespace oscot {

class PiecewiseMap;

struct Atom {
  Rat x;
  Rat mass;

  friend bool operator==(const Atom& a, const Atom& b) = default;
};

struct DensityPiece {
  Interval interval;
  Rat density;

  Rat mass() const { return interval.length() * density; }

  friend bool operator==(const DensityPiece& a, const DensityPiece& b) = default;
};

/// A nonnegative measure on a compact subset of the line: either finitely
/// many atoms or a piecewise-constant density, never both. Values are exact;
/// probability measures are the total_mass() == 1 case. Restrictions of
/// probability measures keep the same representation with smaller mass.
class Measure1D {
 public:
  static Measure1D atomic(std::vector<Atom> atoms);
  static Measure1D density(std::vector<DensityPiece> pieces);
  static Measure1D empty();

  static Measure1D uniform(const Interval& iv);

  bool is_atomic() const { return atomic_.has_value(); }
  bool is_density() const { return !atomic_.has_value(); }
  bool is_empty() const { return total_mass_ == 0; }

  const std::vector<Atom>& atoms() const;
  const std::vector<DensityPiece>& density_pieces() const;

  const Rat& total_mass() const { return total_mass_; }
  bool is_probability() const { return total_mass_ == 1; }

  /// Support as a Domain (atom points, or closed density intervals).
  Domain support() const;

  friend bool operator==(const Measure1D& a, const Measure1D& b) = default;

 private:
  Measure1D() = default;

  std::optional<std::vector<Atom>> atomic_;
  std::vector<DensityPiece> pieces_;
  Rat total_mass_ = Rat(0);
};

/// m((-inf, x]), exact. Nondecreasing and right-continuous in x.
Rat cdf(const Measure1D& m, const Rat& x);

/// Generalized inverse inf{x : cdf(m, x) >= p}; p = 0 returns inf of the
/// support. Throws DomainError outside [0, total mass].
Rat quantile(const Measure1D& m, const Rat& p);

/// n equal-mass atoms at the midpoint quantiles (2i-1)/(2n); coinciding
/// positions merge with summed mass.
Measure1D quantize(const Measure1D& m, int n);

/// The n quantile cells [quantile((i-1)/n), quantile(i/n)] that quantize()
/// condenses to atoms; consecutive, covering [inf supp, sup supp].
std::vector<Interval> quantile_cells(const Measure1D& m, int n);

struct Restriction {
  Measure1D part;
  Rat mass;
};

/// Exact restriction of m to the interval (an unnormalized measure).
Restriction restrict(const Measure1D& m, const Interval& iv);

/// Exact mass carried by an interval set.
Rat mass_on(const Measure1D& m, const IntervalSet& set);

/// Exact image measure m ∘ T^{-1}. Monotone affine pieces map densities to
/// densities (overlapping images add); atomic inputs stay atomic. Throws if
/// the map leaves positive mass uncovered, or if a flat segment would turn
/// density mass into an atom.
Measure1D pushforward(const Measure1D& m, const PiecewiseMap& T);

/// Equality as set functions, decided on canonical forms.
bool measures_equal(const Measure1D& a, const Measure1D& b);

}  // namespace oscot
