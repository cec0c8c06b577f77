#pragma once

#include <optional>

#include "oscot/solver.hpp"
#include "oscot/transforms.hpp"

namespace oscot {

/// The unique monotone rearrangement of mu_j onto nu_j (equal total masses):
/// increasing, T = quantile(nu_j) ∘ cdf(mu_j); decreasing, the reflected
/// composition. Exact piecewise-affine segments; mu_j must be atomless.
std::vector<AffineSegment> monotone_map(const Measure1D& mu_j, const Measure1D& nu_j,
                                        Direction direction);

struct BuildResult {
  PiecewiseMap map;
  Strip enlarged;                // [down(up(f)), up(f) + lift_cost] over supp(mu)
  Rat lift_cost;                 // exact cost of the lifted witness plan
  MonotoneDecomposition decomposition;
};

/// Turns a solved (quantized) instance back into a transport map for the
/// continuous measures: lifts the witness plan through the quantile cells,
/// extracts and enlarges its strip, decomposes by monotonicity, builds one
/// monotone rearrangement per merged interval and glues left-closed.
/// T pushes mu to nu exactly; its graph leaves the enlarged strip in at most
/// finitely many points, so osc_map(T, delta) <= lift_cost.
BuildResult build_map_detailed(const Instance& inst, const SolveResult& result);

PiecewiseMap build_map(const Instance& inst, const SolveResult& result);

struct VerifyReport {
  bool pushforward_ok = false;
  Rat violation_mass{0};
  bool containment_ok = false;      // graph in the strip, mu-a.e.
  bool containment_finite = false;  // escape set is finitely many points
  Rat osc_value{0};
  bool osc_ok = false;

  bool all_ok() const { return pushforward_ok && containment_ok && osc_ok; }
};

/// Three exact verdicts: image measure, graph containment (against `strip`
/// when given, else trivially satisfied), and the oscillation bound.
VerifyReport verify_map(const Instance& inst, const PiecewiseMap& T, const Rat& K,
                        const std::optional<Strip>& strip = std::nullopt);

}  // namespace oscot
