#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polaris/rng.hpp"
#include "polaris/roadnet.hpp"

namespace polaris {

struct Route {
  std::vector<EdgeId> edges;
  NodeId origin = 0;
  NodeId destination = 0;
  double cost = 0.0;  // under the WeightMap that produced it

  bool same_path(const Route& other) const { return edges == other.edges; }
};

struct ODPair {
  NodeId origin = 0;
  NodeId destination = 0;
  bool operator==(const ODPair&) const = default;
};

/// Minimum-cost o->d path under `w` (all entries must be > 0).
///
/// Ties between equal-cost relaxations keep the predecessor edge with the
/// smaller EdgeId, so the result is a pure function of (net, w, o, d).
/// Returns std::nullopt when d is unreachable; o == d yields an empty route.
std::optional<Route> shortest_path(const RoadNetwork& net, const WeightMap& w,
                                   NodeId origin, NodeId destination);

/// Like shortest_path but throws NotFound.
Route require_path(const RoadNetwork& net, const WeightMap& w, NodeId origin,
                   NodeId destination);

/// Single-source distances to every node (infinity when unreachable).
std::vector<double> distances_from(const RoadNetwork& net, const WeightMap& w,
                                   NodeId origin);

double route_cost(const Route& route, const WeightMap& w);
double route_cost(std::span<const EdgeId> edges, const WeightMap& w);

/// Checks incidence: consecutive edges chain, first leaves origin, last
/// enters destination.
bool is_valid_path(const RoadNetwork& net, const Route& route);

/// Uniform OD sampling that rejects o == d and unreachable pairs.
class OdSampler {
 public:
  explicit OdSampler(const RoadNetwork& net, std::size_t max_attempts = 1000);

  /// Throws SamplingExhausted after `max_attempts` rejected draws.
  ODPair sample(Rng& rng) const;
  bool reachable(NodeId from, NodeId to) const;

 private:
  const RoadNetwork* net_;
  std::size_t max_attempts_;
  std::vector<std::uint32_t> scc_;  // component id per node
};

ODPair sample_random_od(const RoadNetwork& net, Rng& rng,
                        std::size_t max_attempts = 1000);

}  // namespace polaris
