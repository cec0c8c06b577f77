#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "oscot/interval_set.hpp"

namespace oscot {

/// One constant piece of a step function. The interval is the tight hull of
/// the piece's trace on the domain; the piece's point set is hull ∩ domain,
/// which may have several components when the domain is disconnected.
struct Piece {
  Interval interval;
  Rat value;

  friend bool operator==(const Piece& a, const Piece& b) {
    return a.interval == b.interval && a.value == b.value;
  }
};

/// An exact step function on a Domain. Pieces are traces of real intervals:
/// they are pairwise disjoint, sorted, and their traces partition the domain.
/// Canonical form merges consecutive pieces with equal values (across domain
/// gaps too), so consecutive values are always distinct.
class StepFn {
 public:
  /// Builds and canonicalizes; throws ValidationError unless the pieces
  /// partition the domain.
  StepFn(Domain domain, std::vector<Piece> pieces);

  static StepFn constant(const Domain& domain, Rat value);

  const Domain& domain() const { return domain_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Value at x; x must lie in the domain.
  const Rat& operator()(const Rat& x) const;

  Rat min_value() const;
  Rat max_value() const;

  /// Trace of each piece on the domain, aligned with pieces().
  IntervalSet trace(size_t piece_index) const;

  StepFn negate() const;
  StepFn add(const Rat& c) const;
  StepFn scale(const Rat& c) const;
  StepFn translated(const Rat& c) const;  // shifts the domain too

  /// Restriction to a sub-domain (the trace of `where` on the domain).
  StepFn restrict_to(const Domain& where) const;

  friend bool operator==(const StepFn& a, const StepFn& b) {
    return a.domain_ == b.domain_ && a.pieces_ == b.pieces_;
  }

 private:
  Domain domain_;
  std::vector<Piece> pieces_;
};

/// Fragment of the common refinement of two step functions over one shared
/// domain: on `interval` ∩ domain, a == va and b == vb.
struct ZipFragment {
  Interval interval;
  Rat va;
  Rat vb;
};

/// Common refinement of two step functions on the same domain.
std::vector<ZipFragment> zip_pieces(const StepFn& a, const StepFn& b);

bool pointwise_le(const StepFn& a, const StepFn& b);
StepFn pointwise_min(const StepFn& a, const StepFn& b);
StepFn pointwise_max(const StepFn& a, const StepFn& b);
StepFn pointwise_sum(const StepFn& a, const StepFn& b);

/// Step functions are upper (lower) semicontinuous exactly when at every
/// boundary between touching pieces the boundary point carries the larger
/// (smaller) of the two adjacent values.
bool is_upper_semicontinuous(const StepFn& f);
bool is_lower_semicontinuous(const StepFn& f);

/// All piece endpoints, deduplicated and sorted.
std::vector<Rat> breakpoints(const StepFn& f);

}  // namespace oscot
