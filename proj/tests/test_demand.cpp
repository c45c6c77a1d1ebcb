#include <gtest/gtest.h>

#include <sstream>

#include "polaris/demand.hpp"
#include "polaris/errors.hpp"
#include "polaris/synthetic.hpp"

namespace polaris {
namespace {

// 8x8 grid, 250 m apart: a 2x2 tiling at 1 km cells.
struct Fixture {
  RoadNetwork net;
  Zoning zoning;
  Fixture() {
    GridSpec spec;
    spec.rows = spec.cols = 8;
    net = make_grid_network(spec);
    zoning = build_tiling(net, 1000.0);
  }
};

ZoneCoord origin_zone(const Fixture& f, const TripRequest& t) {
  return f.zoning.coord(f.zoning.zone_of_node(f.net.edge(t.origin_edge).from));
}
ZoneCoord destination_zone(const Fixture& f, const TripRequest& t) {
  return f.zoning.coord(f.zoning.zone_of_node(f.net.edge(t.destination_edge).from));
}

TEST(Demand, SingleCellSendsEveryTripThere) {
  Fixture f;
  ASSERT_EQ(f.zoning.zone_count(), 4u);
  const ODMatrix m{{{{0, 1}, {1, 0}, 7.0}}};
  const auto demand = sample_demand(m, f.zoning, f.net, 500, 3);
  ASSERT_EQ(demand.trips.size(), 500u);
  for (const auto& t : demand.trips) {
    EXPECT_EQ(origin_zone(f, t), (ZoneCoord{0, 1}));
    EXPECT_EQ(destination_zone(f, t), (ZoneCoord{1, 0}));
    EXPECT_NE(t.origin_edge, t.destination_edge);
    EXPECT_GE(t.start_offset, 0.0);
    EXPECT_LT(t.start_offset, 3600.0);
  }
}

TEST(Demand, ThreeToOneMassPassesChiSquare) {
  Fixture f;
  const ODMatrix m{{{{0, 0}, {1, 1}, 3.0}, {{1, 0}, {0, 1}, 1.0}}};
  const std::size_t n = 10000;
  const auto demand = sample_demand(m, f.zoning, f.net, n, 2024);
  double first = 0;
  for (const auto& t : demand.trips) first += origin_zone(f, t) == ZoneCoord{0, 0} ? 1 : 0;
  const double second = static_cast<double>(n) - first;
  const double e1 = 0.75 * n, e2 = 0.25 * n;
  const double chi2 = (first - e1) * (first - e1) / e1 + (second - e2) * (second - e2) / e2;
  // Critical value of chi-square with one degree of freedom at p = 0.01.
  EXPECT_LT(chi2, 6.635) << first << " vs " << second;
}

TEST(Demand, FixedSeedIsIdenticalAndRoundTrips) {
  Fixture f;
  const auto m = synth_od_matrix(f.zoning, {{{0, 0}, 1.0, 1.0}}, 5);
  const auto a = sample_demand(m, f.zoning, f.net, 200, 9);
  const auto b = sample_demand(m, f.zoning, f.net, 200, 9);
  std::ostringstream sa, sb;
  write_demand(a, f.net, sa);
  write_demand(b, f.net, sb);
  EXPECT_EQ(sa.str(), sb.str());

  std::istringstream in(sa.str());
  const auto back = read_demand(in, f.net);
  ASSERT_EQ(back.trips.size(), a.trips.size());
  for (std::size_t i = 0; i < a.trips.size(); ++i) {
    EXPECT_EQ(back.trips[i].id, a.trips[i].id);
    EXPECT_EQ(back.trips[i].origin_edge, a.trips[i].origin_edge);
    EXPECT_EQ(back.trips[i].destination_edge, a.trips[i].destination_edge);
    EXPECT_EQ(back.trips[i].start_offset, a.trips[i].start_offset);
  }
}

TEST(Demand, TileWithoutEdgesIsEmptyZone) {
  Fixture f;
  const ODMatrix m{{{{0, 0}, {5, 5}, 1.0}}};
  EXPECT_THROW(sample_demand(m, f.zoning, f.net, 1, 1), EmptyZone);
}

TEST(Demand, RejectsMalformedTrips) {
  Fixture f;
  std::istringstream unknown("0 nowhere r0c0-r0c1 10\n");
  EXPECT_THROW(read_demand(unknown, f.net), ParseError);
  std::istringstream late("0 r0c0-r0c1 r0c1-r0c2 3600\n");
  EXPECT_THROW(read_demand(late, f.net), ParseError);
}

TEST(OdMatrix, SaveLoadIsIdentity) {
  Fixture f;
  const auto m = synth_od_matrix(f.zoning, parse_hotspots("1:1:2:0.5"), 3);
  std::stringstream s;
  write_od_matrix(m, s);
  EXPECT_EQ(read_od_matrix(s), m);
}

TEST(OdMatrix, EmptyOrZeroMassIsParseError) {
  std::istringstream empty("# nothing here\n");
  EXPECT_THROW(read_od_matrix(empty), ParseError);
  std::istringstream zero("0:0 0:1 0\n");
  EXPECT_THROW(read_od_matrix(zero), ParseError);
  std::istringstream bad("0:0 0-1 3\n");
  EXPECT_THROW(read_od_matrix(bad), ParseError);
}

TEST(OdMatrix, SingleHotspotPeaksOnItsCell) {
  const Zoning zoning(1000.0, 6000.0, 6000.0);
  const auto m = synth_od_matrix(zoning, parse_hotspots("4:2"), 1);
  EXPECT_LE(m.cells.size(), 36u * 36u);
  const auto top = std::max_element(m.cells.begin(), m.cells.end(),
                                    [](auto& a, auto& b) { return a.trips < b.trips; });
  EXPECT_EQ(top->origin, (ZoneCoord{4, 2}));
  EXPECT_EQ(top->destination, (ZoneCoord{4, 2}));
}

TEST(OdMatrix, HotspotSyntax) {
  const auto h = parse_hotspots("1:2;3:4:2.5;5:6:1:3");
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h[1].center, (ZoneCoord{3, 4}));
  EXPECT_EQ(h[1].weight, 2.5);
  EXPECT_EQ(h[2].sigma, 3.0);
  EXPECT_THROW(parse_hotspots("1"), ParseError);
  EXPECT_THROW(parse_hotspots("1:2:0"), ParseError);
}

}  // namespace
}  // namespace polaris
