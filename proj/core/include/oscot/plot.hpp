#pragma once

#include <optional>
#include <string>

#include "oscot/piecewise_map.hpp"
#include "oscot/strip.hpp"

namespace oscot {

struct PlotAnnotations {
  std::optional<Rat> delta;
  std::optional<Rat> K;
};

/// CSV with exact rational columns: "x,T(x)" for maps, "x,lower,upper" for
/// strips; rows at every breakpoint (both sides of jumps) plus uniform fill.
void write_map_csv(const PiecewiseMap& map, const std::string& path);
void write_strip_csv(const Strip& strip, const std::string& path);

/// Standalone SVG: polylines (split at jumps), axes with corner labels, and
/// the delta/K annotations when given.
void write_map_svg(const PiecewiseMap& map, const std::string& path,
                   const PlotAnnotations& notes = {});
void write_strip_svg(const Strip& strip, const std::string& path,
                     const PlotAnnotations& notes = {});

}  // namespace oscot
