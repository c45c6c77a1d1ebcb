#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "polaris/kroad.hpp"
#include "polaris/route_set.hpp"

namespace polaris {

struct PolarisRequest {
  NodeId origin = 0;
  NodeId destination = 0;
  std::size_t k = 1;
};

struct PolarisOptions {
  /// Iterations allowed before giving up; defaults to 10 * k.
  std::optional<std::size_t> iteration_cap;
  /// Rebuild weights every iteration as free_flow * (1 + K_i) * accumulated
  /// route penalties, instead of compounding the layer factor.
  bool reset_layer_each_iteration = false;
  /// Observes (iteration, layer index used, weights before routing).
  std::function<void(std::size_t, std::size_t, const WeightMap&)> on_iteration;
};

/// Multi-layer popularity penalization.
///
/// Starting from fresh free-flow weights, iteration i scales every edge by
/// (1 + K_{min(i, m-1)}[e]), takes the shortest path, adds it to the set if it
/// is new, and scales the edges of that path by (1 + K_0[e]). Stops once k
/// distinct routes are collected.
///
/// Throws NotFound if the destination is unreachable and IterationCapExceeded
/// (carrying the routes found so far) if the cap is hit first.
RouteSet polaris_routes(const RoadNetwork& net, const KRoadLayers& layers,
                        const PolarisRequest& req, const PolarisOptions& options = {});

}  // namespace polaris
