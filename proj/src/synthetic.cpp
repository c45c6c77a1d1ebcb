#include "polaris/synthetic.hpp"

#include <fmt/format.h>

#include <random>
#include <stdexcept>

#include "polaris/rng.hpp"

namespace polaris {

RoadNetwork make_grid_network(const GridSpec& spec) {
  if (spec.rows < 2 || spec.cols < 2) throw std::invalid_argument("grid needs at least 2x2 nodes");
  const int mid_row = spec.rows / 2;
  const int mid_col = spec.cols / 2;
  Rng rng(spec.seed);
  std::bernoulli_distribution regulated(spec.regulated_share);

  std::vector<RoadNode> nodes;
  nodes.reserve(static_cast<std::size_t>(spec.rows * spec.cols));
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const auto geo = unproject({c * spec.spacing, r * spec.spacing}, spec.anchor);
      const bool crossing = r == mid_row && c == mid_col;
      const bool draw = regulated(rng);
      nodes.push_back({fmt::format("r{}c{}", r, c), geo.lon, geo.lat,
                       crossing || draw ? Regulation::Regulated : Regulation::Unregulated});
    }
  }

  auto id = [&](int r, int c) { return static_cast<NodeId>(r * spec.cols + c); };
  std::vector<RoadEdge> edges;
  auto link = [&](int r0, int c0, int r1, int c1, bool corridor) {
    const double speed = corridor ? spec.corridor_speed : spec.street_speed;
    const int lanes = corridor ? 2 : 1;
    for (auto [a, b] : {std::pair{id(r0, c0), id(r1, c1)}, std::pair{id(r1, c1), id(r0, c0)}}) {
      edges.push_back({fmt::format("{}-{}", nodes[a].name, nodes[b].name), a, b, spec.spacing,
                       speed, lanes});
    }
  };
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      if (c + 1 < spec.cols) link(r, c, r, c + 1, r == mid_row);
      if (r + 1 < spec.rows) link(r, c, r + 1, c, c == mid_col);
    }
  }
  return RoadNetwork(std::move(nodes), std::move(edges));
}

}  // namespace polaris
