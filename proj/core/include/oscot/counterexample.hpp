#pragma once

#include "oscot/map_builder.hpp"

namespace oscot {

/// The built-in fixture where the best map folds: mu is heavy near the edges
/// of [0,1], nu = U#mu for the tent map U, and the unique increasing
/// rearrangement realizes slope 4 while U stays at slope 2.
struct Counterexample {
  Instance instance;
  PiecewiseMap u_map;     // tent: 2x up to 1/2, then 2 - 2x
  PiecewiseMap monotone;  // the increasing rearrangement of mu onto nu
};

Counterexample make_counterexample(const Rat& delta);

}  // namespace oscot
