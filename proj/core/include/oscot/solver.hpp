#pragma once

#include <optional>
#include <vector>

#include "oscot/measure.hpp"
#include "oscot/oscillation.hpp"
#include "oscot/strip.hpp"

namespace oscot {

/// One minimization problem: move mu onto nu, paying the largest coupled
/// y-gap over x-pairs closer than delta.
struct Instance {
  Domain domain;         // superset of supp(mu)
  Domain target_domain;  // superset of supp(nu)
  Rat delta;
  Measure1D mu;
  Measure1D nu;

  /// Throws ValidationError when any field-level invariant fails.
  void validate() const;
};

struct PlanEntry {
  Rat x;
  Rat y;
  Rat mass;

  friend bool operator==(const PlanEntry& a, const PlanEntry& b) = default;
};

/// A finite coupling; entries sorted by (x, y), masses positive.
struct Plan {
  std::vector<PlanEntry> entries;

  SupportSet support() const;
  Measure1D x_marginal() const;
  Measure1D y_marginal() const;

  friend bool operator==(const Plan& a, const Plan& b) = default;
};

struct SolveStats {
  long long nodes = 0;
  long long leaves = 0;
  long long hall_prunes = 0;
  long long memo_hits = 0;
  long long thresholds_tested = 0;
  int quantize_n = 0;            // 0 when the input was already atomic
  Rat max_mu_cell_diameter{0};   // quantization slack, 0 when not quantized
  Rat max_nu_cell_diameter{0};
};

struct SolveResult {
  Rat K;
  Plan plan;
  Strip strip;        // certified [f, up(f) + K] over the atom grid
  Instance discrete;  // the atomic instance that was actually solved
  SolveStats stats;
};

struct SolveOptions {
  std::optional<int> quantize_n;  // required for non-atomic inputs
  int threads = 1;                // never changes the result, only the speed
};

/// {0} plus all pairwise |y_i - y_j| over atoms of nu, sorted, deduplicated.
/// The optimal value always belongs to this set.
std::vector<Rat> candidate_thresholds(const Instance& inst);

/// Transportation feasibility when each source may only ship into one
/// y-interval. Decided by the interval Hall criterion over all atom-bounded
/// y-intervals; when feasible, a plan is built greedily (smallest interval
/// end first) within the allowed cells.
std::optional<Plan> flow_feasible(const std::vector<Atom>& mu_atoms,
                                  const std::vector<Atom>& nu_atoms,
                                  const std::vector<Interval>& allowed);

struct FeasibleWitness {
  StepFn lower;  // f on the atom-grid domain
  Plan plan;
};

/// Is there a plan of cost <= K? Searches lower envelopes f: x-grid ->
/// y-grid depth first, left to right, values ascending; any admissible
/// support lies in some [f, up(f) + K], so the search is exact.
std::optional<FeasibleWitness> feasible(const Instance& inst, const Rat& K,
                                        SolveStats* stats = nullptr);

/// Least feasible threshold with witness plan and certified strip;
/// deterministic (the witness is the first one the ordered search finds).
SolveResult solve(const Instance& inst, const SolveOptions& opts = {});

/// Ground truth by enumeration of all n! assignments; requires equal-mass
/// atomic instances with the same count n <= 8 on both sides.
Rat oracle_solve(const Instance& inst);

/// Re-derives every certificate invariant of a result: exact marginals,
/// osc_plan == K, strip optimality, support containment.
void verify_certificate(const SolveResult& result);

}  // namespace oscot
