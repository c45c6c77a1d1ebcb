#pragma once

// Comparison algorithms for alternative routing. Every function takes the
// base (free-flow) weights `w` and works on a private copy.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "polaris/route_set.hpp"

namespace polaris {

/// Lower bound on randomized weights, as a fraction of the base weight.
inline constexpr double kRandomizedWeightFloor = 0.01;

/// Fastest route under `w`. Throws NotFound.
Route fastest(const RoadNetwork& net, const WeightMap& w, NodeId o, NodeId d);

/// Cumulative path penalization: after each shortest path, its edges are
/// scaled by (1 + p). Default cap 10 * k.
RouteSet path_penalization(const RoadNetwork& net, const WeightMap& w, NodeId o, NodeId d,
                           std::size_t k, double p,
                           std::optional<std::size_t> cap = std::nullopt);

/// Graph randomization: every iteration re-draws all weights from the base
/// map as w + Normal(0, (w * delta)^2), floored at 1% of w. Default cap 50 * k.
RouteSet graph_randomization(const RoadNetwork& net, const WeightMap& w, NodeId o,
                             NodeId d, std::size_t k, double delta, std::uint64_t seed,
                             std::optional<std::size_t> cap = std::nullopt);

/// Path randomization: the first route is the fastest; afterwards only the
/// edges of the previous route get a Normal(0, (w_cur * delta)^2) kick on the
/// working map, so perturbations accumulate. Floored at 1% of the base weight.
/// Default cap 50 * k.
RouteSet path_randomization(const RoadNetwork& net, const WeightMap& w, NodeId o,
                            NodeId d, std::size_t k, double delta, std::uint64_t seed,
                            std::optional<std::size_t> cap = std::nullopt);

struct KmdOptions {
  /// Maximum shortest-path computations spent building the candidate pool.
  std::size_t candidate_budget = 64;
};

/// Approximation of k-most-diverse near-shortest paths.
///
/// A candidate pool of distinct routes with free-flow cost <= (1 + epsilon)
/// times the fastest cost is collected from path-penalization sweeps at
/// several penalty strengths. Starting from the fastest route, the candidate
/// that maximizes the minimum Jaccard distance to the chosen routes is added
/// until k are chosen (ties: lower cost, then earlier discovery).
///
/// Throws InsufficientCandidates (carrying the pool's greedy selection) when
/// fewer than k feasible routes are found.
RouteSet kmd(const RoadNetwork& net, const WeightMap& w, NodeId o, NodeId d, std::size_t k,
             double epsilon, const KmdOptions& options = {});

}  // namespace polaris
