#pragma once

#include <cstdint>

#include "polaris/roadnet.hpp"

namespace polaris {

/// Square street grid with two-way edges between 4-neighbors and a faster
/// corridor along the middle row and middle column.
struct GridSpec {
  int rows = 20;
  int cols = 20;
  double spacing = 250.0;          // meters between neighboring nodes
  double street_speed = 50.0 / 3.6;
  double corridor_speed = 90.0 / 3.6;
  /// Share of non-corridor intersections marked regulated (seeded).
  double regulated_share = 0.3;
  std::uint64_t seed = 1;
  GeoPoint anchor{11.20, 43.75};
};

/// Nodes are named `r<row>c<col>`; edges `<from>-<to>`. The crossing of the
/// two corridors is always regulated.
RoadNetwork make_grid_network(const GridSpec& spec);

}  // namespace polaris
