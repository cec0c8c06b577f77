#pragma once

#include "oscot/piecewise_map.hpp"
#include "oscot/strip.hpp"

namespace oscot {

/// Exact supremum of |T(x) - T(x')| over pairs of support points at strict
/// distance < delta. The value can be a non-attained supremum (one-sided
/// limits at excluded window endpoints are taken into account); it is
/// computed in closed form per pair of affine graph elements.
Rat osc_map(const PiecewiseMap& T, const Domain& supp_mu, const Rat& delta);

/// Max over pairs (x,y), (x',y') of the support with |x - x'| < delta
/// (identical x included) of |y - y'|; attained, the support being finite.
Rat osc_plan(const SupportSet& support, const Rat& delta);

}  // namespace oscot
