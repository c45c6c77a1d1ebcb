#pragma once

// Graph builders and independent oracles shared by unit and acceptance tests.
// The oracles deliberately avoid the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "polaris/kroad.hpp"
#include "polaris/pathfinding.hpp"
#include "polaris/rng.hpp"
#include "polaris/roadnet.hpp"
#include "polaris/zoning.hpp"

namespace polaris::testing {

struct EdgeSpec {
  NodeId from;
  NodeId to;
  double cost;  // built as length = cost, speed = 1 so free flow equals cost
};

inline RoadNetwork make_net(std::size_t nodes, const std::vector<EdgeSpec>& edges,
                            const std::vector<NodeId>& regulated = {}) {
  std::vector<RoadNode> ns(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    ns[i].name = "n" + std::to_string(i);
    ns[i].lon = 11.0 + 0.001 * static_cast<double>(i);
    ns[i].lat = 43.0;
  }
  for (NodeId r : regulated) ns[r].regulation = Regulation::Regulated;
  std::vector<RoadEdge> es;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    es.push_back({"e" + std::to_string(i), edges[i].from, edges[i].to, edges[i].cost, 1.0, 1});
  }
  return RoadNetwork(std::move(ns), std::move(es));
}

// A=0, B=1, C=2. e0: A->B 5, e1: A->C 3, e2: C->B 1.
inline RoadNetwork triangle() { return make_net(3, {{0, 1, 5}, {0, 2, 3}, {2, 1, 1}}); }

// o=0, a=1, b=2, d=3. Top o->a->d (e0, e1) costs 10; bottom o->b->d (e2, e3)
// costs 11.
inline RoadNetwork diamond() {
  return make_net(4, {{0, 1, 5}, {1, 3, 5}, {0, 2, 5.5}, {2, 3, 5.5}});
}
inline const std::vector<EdgeId> kDiamondTop{0, 1};
inline const std::vector<EdgeId> kDiamondBottom{2, 3};

// Strongly connected random digraph: a Hamiltonian cycle plus random chords.
inline RoadNetwork random_graph(std::size_t n, std::size_t extra, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  std::uniform_real_distribution<double> cost(1.0, 100.0);
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n), cost(rng)});
  }
  for (std::size_t i = 0; i < extra; ++i) {
    const auto a = node(rng), b = node(rng);
    if (a != b) edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), cost(rng)});
  }
  return make_net(n, edges);
}

// Five-node clique (each node in its own 1 km cell) whose node 4 is the only
// link to node 5, further east. Every route into node 5 crosses edge
// kBridgeEdge (4 -> 5); kBridgeReturn (5 -> 4) is the only way back.
inline RoadNetwork bridge_graph() {
  std::vector<RoadNode> ns(6);
  for (std::size_t i = 0; i < 5; ++i) {
    ns[i] = {"n" + std::to_string(i), 11.0 + 0.02 * static_cast<double>(i), 43.0, {}};
  }
  ns[5] = {"n5", 11.11, 43.0, {}};
  std::vector<RoadEdge> es;
  for (NodeId a = 0; a < 5; ++a) {
    for (NodeId b = 0; b < 5; ++b) {
      if (a != b) es.push_back({"c" + std::to_string(es.size()), a, b, 1000.0, 10.0, 1});
    }
  }
  es.push_back({"bridge", 4, 5, 1000.0, 10.0, 1});
  es.push_back({"return", 5, 4, 1000.0, 10.0, 1});
  return RoadNetwork(std::move(ns), std::move(es));
}
inline constexpr EdgeId kBridgeEdge = 20;
inline constexpr EdgeId kBridgeReturn = 21;

inline double bellman_ford(const RoadNetwork& net, const WeightMap& w, NodeId o, NodeId d) {
  std::vector<double> dist(net.node_count(), std::numeric_limits<double>::infinity());
  dist[o] = 0.0;
  for (std::size_t round = 0; round + 1 < net.node_count(); ++round) {
    bool changed = false;
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      const auto& ed = net.edge(static_cast<EdgeId>(e));
      if (dist[ed.from] + w[e] < dist[ed.to]) {
        dist[ed.to] = dist[ed.from] + w[e];
        changed = true;
      }
    }
    if (!changed) break;
  }
  return dist[d];
}

// Materializes the bipartite edge-zone usage graph and, per edge, drops the
// weakest zone (largest ZoneId among equals) while the rest still covers 80%.
inline std::vector<std::uint32_t> kroad_oracle(const std::vector<Route>& routes,
                                               const Zoning& zoning,
                                               std::size_t edge_count) {
  std::vector<std::map<ZoneId, std::uint64_t>> usage(edge_count);
  for (const auto& r : routes) {
    const ZoneId z = zoning.zone_of_node(r.origin);
    for (EdgeId e : r.edges) ++usage[e][z];
  }
  std::vector<std::uint32_t> out(edge_count, 0);
  for (std::size_t e = 0; e < edge_count; ++e) {
    std::vector<std::pair<std::uint64_t, ZoneId>> zones;
    std::uint64_t total = 0;
    for (auto [z, c] : usage[e]) {
      zones.push_back({c, z});
      total += c;
    }
    std::uint64_t kept = total;
    while (zones.size() > 1) {
      auto weakest = std::min_element(zones.begin(), zones.end(), [](auto& x, auto& y) {
        return x.first != y.first ? x.first < y.first : x.second > y.second;
      });
      // 80% coverage in integers: 5 * covered >= 4 * total.
      if (5 * (kept - weakest->first) < 4 * total) break;
      kept -= weakest->first;
      zones.erase(weakest);
    }
    out[e] = static_cast<std::uint32_t>(zones.size());
  }
  return out;
}

// Every simple o->d path, by depth-first enumeration.
inline std::vector<std::vector<EdgeId>> all_simple_paths(const RoadNetwork& net, NodeId o,
                                                         NodeId d) {
  std::vector<std::vector<EdgeId>> out;
  std::vector<EdgeId> stack;
  std::vector<char> on_path(net.node_count(), 0);
  auto dfs = [&](auto&& self, NodeId at) -> void {
    if (at == d) {
      out.push_back(stack);
      return;
    }
    on_path[at] = 1;
    for (EdgeId e : net.out_edges(at)) {
      const NodeId next = net.edge(e).to;
      if (on_path[next]) continue;
      stack.push_back(e);
      self(self, next);
      stack.pop_back();
    }
    on_path[at] = 0;
  };
  dfs(dfs, o);
  return out;
}

}  // namespace polaris::testing
