#include <gtest/gtest.h>

#include "polaris/zoning.hpp"
#include "support.hpp"

namespace polaris {
namespace {

RoadNetwork net_at(const std::vector<PlanarPoint>& points) {
  const GeoPoint anchor{11.2, 43.75};
  std::vector<RoadNode> nodes;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto g = unproject(points[i], anchor);
    nodes.push_back({"n" + std::to_string(i), g.lon, g.lat, {}});
  }
  return RoadNetwork(std::move(nodes), {});
}

TEST(Zoning, TwoKilometerBoxHasFourCells) {
  const auto z = build_tiling(net_at({{0, 0}, {2000, 2000}, {500, 1500}}), 1000.0);
  EXPECT_EQ(z.rows(), 2);
  EXPECT_EQ(z.cols(), 2);
  EXPECT_EQ(z.zone_count(), 4u);
  EXPECT_EQ(z.coord(z.zone_of_node(0)), (ZoneCoord{0, 0}));
  // The far corner belongs to the last row and column.
  EXPECT_EQ(z.coord(z.zone_of_node(1)), (ZoneCoord{1, 1}));
  EXPECT_EQ(z.coord(z.zone_of_node(2)), (ZoneCoord{1, 0}));
}

TEST(Zoning, CompactNetworkIsOneZone) {
  const auto z = build_tiling(net_at({{0, 0}, {10, 20}, {300, 400}}), 1000.0);
  EXPECT_EQ(z.zone_count(), 1u);
  for (NodeId n = 0; n < 3; ++n) EXPECT_EQ(z.zone_of_node(n), 0u);
}

TEST(Zoning, BoundaryPointTakesHigherCell) {
  const auto z = build_tiling(net_at({{0, 0}, {1000, 500}, {3000, 3000}}), 1000.0);
  EXPECT_EQ(z.coord(z.zone_of_node(1)), (ZoneCoord{0, 1}));
  const Zoning direct(1000.0, 3000.0, 3000.0);
  EXPECT_EQ(direct.cell_of({999.999, 2000.0}), (ZoneCoord{2, 0}));
  EXPECT_EQ(direct.cell_of({2000.0, 0.0}), (ZoneCoord{0, 2}));
}

TEST(Zoning, IdsAreRowMajorAndRoundTripAsText) {
  const Zoning z(500.0, 1500.0, 1000.0);
  EXPECT_EQ(z.cols(), 3);
  EXPECT_EQ(z.rows(), 2);
  EXPECT_EQ(z.id({1, 2}), 5u);
  EXPECT_EQ(z.coord(5), (ZoneCoord{1, 2}));
  EXPECT_EQ(to_string(ZoneCoord{4, 11}), "4:11");
  EXPECT_EQ(parse_zone("4:11"), (ZoneCoord{4, 11}));
  EXPECT_FALSE(parse_zone("4-11"));
  EXPECT_FALSE(parse_zone("a:1"));
  EXPECT_TRUE(z.contains({1, 2}));
  EXPECT_FALSE(z.contains({2, 0}));
}

TEST(Zoning, EveryNodeGetsAValidCell) {
  const auto net = testing::random_graph(60, 0, 4);
  for (double cell : {50.0, 137.0, 1000.0}) {
    const auto z = build_tiling(net, cell);
    for (NodeId n = 0; n < net.node_count(); ++n) {
      EXPECT_LT(z.zone_of_node(n), z.zone_count());
    }
  }
}

}  // namespace
}  // namespace polaris
