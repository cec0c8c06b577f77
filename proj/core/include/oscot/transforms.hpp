#pragma once

#include <vector>

#include "oscot/piecewise_map.hpp"
#include "oscot/step_function.hpp"

namespace oscot {

/// Windowed infimum over the open ball: (up f)(x) = inf { f(y) : y in the
/// domain, |y - x| < delta }. Computed exactly, level set by level set, in
/// increasing value order; the result is upper semicontinuous.
StepFn up_transform(const StepFn& f, const Rat& delta);

/// Windowed supremum over the open ball, = -up(-f); lower semicontinuous.
StepFn down_transform(const StepFn& f, const Rat& delta);

/// A pair (phi, psi) with psi = up(phi) and phi = down(psi); both identities
/// are re-verified on construction.
class ConjugatePair {
 public:
  ConjugatePair(StepFn phi, StepFn psi, Rat delta);

  const StepFn& phi() const { return phi_; }
  const StepFn& psi() const { return psi_; }
  const Rat& delta() const { return delta_; }

 private:
  StepFn phi_, psi_;
  Rat delta_;
};

/// (up-then-down of f, up of f): conjugate for every f, and a fixed point of
/// itself applied to its first component.
ConjugatePair conjugate_closure(const StepFn& f, const Rat& delta);

bool is_conjugate_pair(const StepFn& phi, const StepFn& psi, const Rat& delta);

/// Pieces of f that sit strictly below both neighbors.
std::vector<Interval> find_floors(const StepFn& f);
/// Pieces strictly above both neighbors.
std::vector<Interval> find_ceilings(const StepFn& f);

struct MergedInterval {
  Interval interval;
  Direction direction;
};

/// Structure of a conjugate pair: floors of psi, its maximal nondecreasing
/// runs (rises) and nonincreasing runs (falls), and the coarser merged cover
/// on which *both* functions are monotone (each floor split at the midpoint
/// of the gap between its neighbors).
struct MonotoneDecomposition {
  std::vector<Interval> floors;
  std::vector<Interval> rises;
  std::vector<Interval> falls;
  std::vector<MergedInterval> merged;
  Rat delta;
};

MonotoneDecomposition monotone_decomposition(const ConjugatePair& pair);

/// Exact monotonicity scan of a step function on the trace of an interval.
bool is_monotone_on(const StepFn& f, const Interval& iv, Direction direction);

}  // namespace oscot
