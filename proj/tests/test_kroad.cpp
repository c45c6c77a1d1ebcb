#include <gtest/gtest.h>

#include <sstream>

#include "polaris/errors.hpp"
#include "polaris/kroad.hpp"
#include "polaris/synthetic.hpp"
#include "support.hpp"

namespace polaris {
namespace {

// Zoning with explicit zones per node: node i lives in zones[i].
Zoning zoning_of(std::vector<ZoneId> zones, int count) {
  Zoning z(1.0, static_cast<double>(count), 1.0);
  z.assign_nodes(std::move(zones));
  return z;
}

Route route_from(NodeId origin, std::vector<EdgeId> edges) {
  Route r;
  r.origin = origin;
  r.edges = std::move(edges);
  return r;
}

TEST(KRoad, FiveThreeTwoNeedsTwoZones) {
  // Nodes 0, 1, 2 lie in zones 0, 1, 2; edge 0 is shared.
  std::vector<Route> routes;
  for (int i = 0; i < 5; ++i) routes.push_back(route_from(0, {0}));
  for (int i = 0; i < 3; ++i) routes.push_back(route_from(1, {0}));
  for (int i = 0; i < 2; ++i) routes.push_back(route_from(2, {0}));
  const auto k = compute_kroad(routes, zoning_of({0, 1, 2}, 3), 2);
  EXPECT_EQ(k[0], 2u);
  EXPECT_EQ(k[1], 0u);
}

TEST(KRoad, SingleSourceIsOne) {
  std::vector<Route> routes{route_from(1, {0, 1}), route_from(1, {1})};
  const auto k = compute_kroad(routes, zoning_of({0, 1}, 2), 3);
  EXPECT_EQ(k, (std::vector<std::uint32_t>{1, 1, 0}));
}

TEST(KRoad, ExactlyEightyPercentIsEnough) {
  // 4 of 5 traversals from zone 0: the first zone alone covers 80%.
  std::vector<Route> routes;
  for (int i = 0; i < 4; ++i) routes.push_back(route_from(0, {0}));
  routes.push_back(route_from(1, {0}));
  EXPECT_EQ(compute_kroad(routes, zoning_of({0, 1}, 2), 1)[0], 1u);
}

TEST(KRoad, UniformFlowNeedsCeilingOfEightyPercent) {
  std::vector<Route> routes;
  std::vector<ZoneId> zones;
  for (NodeId z = 0; z < 7; ++z) {
    zones.push_back(z);
    routes.push_back(route_from(z, {0}));
  }
  // 5 of 7 is 71%, 6 of 7 is 86%.
  EXPECT_EQ(compute_kroad(routes, zoning_of(zones, 7), 1)[0], 6u);
}

TEST(KRoad, MatchesBipartiteOracleOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const std::size_t zone_count = 1 + rng() % 50;
    const std::size_t node_count = 60, edge_count = 40;
    std::vector<ZoneId> zones(node_count);
    for (auto& z : zones) z = static_cast<ZoneId>(rng() % zone_count);
    const auto zoning = zoning_of(zones, static_cast<int>(zone_count));
    std::vector<Route> routes(rng() % 201);
    for (auto& r : routes) {
      r.origin = static_cast<NodeId>(rng() % node_count);
      r.edges.resize(1 + rng() % 12);
      for (auto& e : r.edges) e = static_cast<EdgeId>(rng() % edge_count);
    }
    EXPECT_EQ(compute_kroad(routes, zoning, edge_count),
              testing::kroad_oracle(routes, zoning, edge_count))
        << "seed " << seed;
  }
}

TEST(MinMaxNormalize, Examples) {
  EXPECT_EQ(min_max_normalize(std::vector<double>{1, 3, 5}), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(min_max_normalize(std::vector<double>{4, 4}), (std::vector<double>{0, 0}));
  EXPECT_EQ(min_max_normalize(std::vector<double>{0, 10}), (std::vector<double>{0, 1}));
  EXPECT_TRUE(min_max_normalize(std::vector<double>{}).empty());
}

TEST(KRoadLayers, SingleLayerIsOneNormalizedComputation) {
  const auto net = testing::bridge_graph();
  const auto layers = compute_kroad_layers(net, 300, 1, 11);
  ASSERT_EQ(layers.m(), 1u);
  double lo = 1, hi = 0;
  for (double x : layers.layer(0)) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 1.0);
}

TEST(KRoadLayers, BridgeIsTheMostPopularEdge) {
  const auto net = testing::bridge_graph();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto layers = compute_kroad_layers(net, 2000, 2, seed);
    EXPECT_EQ(layers.layer(0)[testing::kBridgeEdge], 1.0) << "seed " << seed;
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      if (e != testing::kBridgeEdge) EXPECT_LT(layers.layer(0)[e], 1.0);
    }
  }
}

TEST(KRoadLayers, FixedSeedIsByteIdentical) {
  GridSpec spec;
  spec.rows = spec.cols = 10;
  const auto net = make_grid_network(spec);
  std::ostringstream a, b;
  write_layers(compute_kroad_layers(net, 100, 3, 5), a);
  write_layers(compute_kroad_layers(net, 100, 3, 5), b);
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c;
  write_layers(compute_kroad_layers(net, 100, 3, 6), c);
  EXPECT_NE(a.str(), c.str());
}

TEST(KRoadLayers, WeightsCompoundEveryLayer) {
  GridSpec spec;
  spec.rows = spec.cols = 8;
  const auto net = make_grid_network(spec);
  const auto free_flow = free_flow_weights(net);
  std::vector<WeightMap> seen;
  KRoadOptions options;
  options.on_layer_weights = [&](std::size_t, const WeightMap& w) { seen.push_back(w); };
  const auto layers = compute_kroad_layers(net, 200, 4, 8, options);
  ASSERT_EQ(seen.size(), 4u);
  for (std::size_t l = 0; l < 4; ++l) {
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      double expect = free_flow[e];
      for (std::size_t j = 0; j <= l; ++j) expect *= 1.0 + layers.layer(j)[e];
      EXPECT_NEAR(seen[l][e], expect, 1e-12 * expect);
    }
  }
}

TEST(KRoadLayers, TruncationMatchesSmallerM) {
  GridSpec spec;
  spec.rows = spec.cols = 6;
  const auto net = make_grid_network(spec);
  const auto four = compute_kroad_layers(net, 80, 4, 2);
  EXPECT_EQ(four.truncated(2), compute_kroad_layers(net, 80, 2, 2));
}

TEST(KRoadLayers, SerialAndParallelAgree) {
  GridSpec spec;
  spec.rows = spec.cols = 7;
  const auto net = make_grid_network(spec);
  KRoadOptions serial;
  serial.parallel = false;
  EXPECT_EQ(compute_kroad_layers(net, 150, 3, 4, serial), compute_kroad_layers(net, 150, 3, 4));
}

TEST(KRoadLayers, ReusedPairsDifferFromResampled) {
  GridSpec spec;
  spec.rows = spec.cols = 7;
  const auto net = make_grid_network(spec);
  KRoadOptions reuse;
  reuse.resample_per_layer = false;
  const auto a = compute_kroad_layers(net, 150, 2, 4, reuse);
  const auto b = compute_kroad_layers(net, 150, 2, 4);
  EXPECT_EQ(a.layer(0), b.layer(0));
  EXPECT_NE(a.layer(1), b.layer(1));
}

TEST(ClassifyPopularity, LogBinsAreClosedOnTheRight) {
  const auto c = classify_popularity(std::vector<double>{0.001, 0.01, 0.1, 1.0});
  EXPECT_EQ(c, (std::vector<PopularityClass>{PopularityClass::Low, PopularityClass::Low,
                                             PopularityClass::Medium, PopularityClass::High}));
}

TEST(ClassifyPopularity, ZeroIsLowAndDegenerateThrows) {
  const auto c = classify_popularity(std::vector<double>{0.0, 0.2, 0.9});
  EXPECT_EQ(c[0], PopularityClass::Low);
  EXPECT_EQ(c[2], PopularityClass::High);
  EXPECT_THROW(classify_popularity(std::vector<double>{0.5, 0.5, 0.0}), DegenerateDistribution);
  EXPECT_THROW(classify_popularity(std::vector<double>{0.0, 0.0}), DegenerateDistribution);
}

TEST(LayersFile, SaveLoadIsIdentity) {
  KRoadLayers layers{123, 9, {{0.0, 0.25, 1.0 / 3.0}, {1.0, 0.1, 0.0}}};
  std::stringstream s;
  write_layers(layers, s);
  EXPECT_EQ(read_layers(s), layers);
}

TEST(LayersFile, HeaderMismatchAndBadValues) {
  std::istringstream wrong_m("KROAD m=2 v=1 seed=0\n0 0.5\n");
  EXPECT_THROW(read_layers(wrong_m), SchemaMismatch);
  std::istringstream gap("KROAD m=1 v=1 seed=0\n0 0.5\n2 0.5\n");
  EXPECT_THROW(read_layers(gap), SchemaMismatch);
  std::istringstream range("KROAD m=1 v=1 seed=0\n0 1.5\n");
  EXPECT_THROW(read_layers(range), SchemaMismatch);
  std::istringstream header("LAYERS 1\n");
  EXPECT_THROW(read_layers(header), ParseError);
  EXPECT_THROW(load_layers("/nonexistent/layers.txt"), ParseError);
}

}  // namespace
}  // namespace polaris
