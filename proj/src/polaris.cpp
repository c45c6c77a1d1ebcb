#include "polaris/polaris.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

#include "polaris/errors.hpp"
#include "polaris/kernels.hpp"

namespace polaris {

RouteSet polaris_routes(const RoadNetwork& net, const KRoadLayers& layers,
                        const PolarisRequest& req, const PolarisOptions& options) {
  if (req.k < 1) throw std::invalid_argument("k must be >= 1");
  if (req.origin == req.destination) throw std::invalid_argument("origin equals destination");
  if (layers.m() < 1 || layers.edge_count() != net.edge_count()) {
    throw SchemaMismatch(fmt::format("layers cover {} edges, network has {}",
                                     layers.edge_count(), net.edge_count()));
  }
  const std::size_t cap = options.iteration_cap.value_or(10 * req.k);
  const WeightMap free_flow = free_flow_weights(net);
  const auto& base_layer = layers.layer(0);

  WeightMap w = free_flow;
  // Product of (1 + K_0) route penalties, only tracked for the reset variant.
  WeightMap route_penalty;
  if (options.reset_layer_each_iteration) route_penalty.assign(net.edge_count(), 1.0);

  RouteSet result;
  for (std::size_t i = 0; result.size() < req.k; ++i) {
    if (i >= cap) {
      auto message = fmt::format("found {} of {} distinct routes within {} iterations",
                                 result.size(), req.k, cap);
      throw IterationCapExceeded(std::move(message), std::move(result.routes));
    }
    const std::size_t layer_index = std::min(i, layers.m() - 1);
    const auto& layer = layers.layer(layer_index);
    if (options.reset_layer_each_iteration) {
      for (std::size_t e = 0; e < w.size(); ++e) {
        w[e] = free_flow[e] * route_penalty[e] * (1.0 + layer[e]);
      }
    } else {
      scale_weights(w, layer);
    }
    rescale_if_large(w);
    if (options.on_iteration) options.on_iteration(i, layer_index, w);

    Route p = require_path(net, w, req.origin, req.destination);
    for (EdgeId e : p.edges) {
      w[e] *= 1.0 + base_layer[e];
      if (options.reset_layer_each_iteration) route_penalty[e] *= 1.0 + base_layer[e];
    }
    p.cost = route_cost(p, free_flow);
    result.insert(std::move(p), i);
  }
  return result;
}

}  // namespace polaris
