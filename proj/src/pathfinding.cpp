#include "polaris/pathfinding.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "polaris/errors.hpp"

namespace polaris {

IncompleteRouteSet::IncompleteRouteSet(const std::string& what,
                                       std::vector<Route> partial)
    : Error(ErrorKind::Algorithmic, what), partial_(std::move(partial)) {}

namespace {

constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

using HeapItem = std::pair<double, NodeId>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

// Runs Dijkstra from `origin`, stopping once `stop_at` is settled (pass an
// out-of-range id to settle everything).
void dijkstra(const RoadNetwork& net, const WeightMap& w, NodeId origin,
              NodeId stop_at, std::vector<double>& dist, std::vector<EdgeId>& pred) {
  dist.assign(net.node_count(), kInf);
  pred.assign(net.node_count(), kNoEdge);
  std::vector<char> settled(net.node_count(), 0);
  MinHeap heap;
  dist[origin] = 0.0;
  heap.emplace(0.0, origin);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (u == stop_at) return;
    for (EdgeId e : net.out_edges(u)) {
      const NodeId v = net.edge(e).to;
      if (settled[v]) continue;
      const double nd = d + w[e];
      if (nd < dist[v]) {
        dist[v] = nd;
        pred[v] = e;
        heap.emplace(nd, v);
      } else if (nd == dist[v] && e < pred[v]) {
        pred[v] = e;
      }
    }
  }
}

}  // namespace

std::optional<Route> shortest_path(const RoadNetwork& net, const WeightMap& w,
                                   NodeId origin, NodeId destination) {
  Route route;
  route.origin = origin;
  route.destination = destination;
  if (origin == destination) return route;

  std::vector<double> dist;
  std::vector<EdgeId> pred;
  dijkstra(net, w, origin, destination, dist, pred);
  if (pred[destination] == kNoEdge) return std::nullopt;

  for (NodeId v = destination; v != origin;) {
    const EdgeId e = pred[v];
    route.edges.push_back(e);
    v = net.edge(e).from;
  }
  std::reverse(route.edges.begin(), route.edges.end());
  route.cost = route_cost(route.edges, w);
  return route;
}

Route require_path(const RoadNetwork& net, const WeightMap& w, NodeId origin,
                   NodeId destination) {
  auto r = shortest_path(net, w, origin, destination);
  if (!r) {
    throw NotFound(fmt::format("no path from {} to {}", net.node(origin).name,
                               net.node(destination).name));
  }
  return std::move(*r);
}

std::vector<double> distances_from(const RoadNetwork& net, const WeightMap& w,
                                   NodeId origin) {
  std::vector<double> dist;
  std::vector<EdgeId> pred;
  dijkstra(net, w, origin, static_cast<NodeId>(net.node_count()), dist, pred);
  return dist;
}

double route_cost(std::span<const EdgeId> edges, const WeightMap& w) {
  double sum = 0.0;
  for (EdgeId e : edges) sum += w[e];
  return sum;
}

double route_cost(const Route& route, const WeightMap& w) {
  return route_cost(route.edges, w);
}

bool is_valid_path(const RoadNetwork& net, const Route& route) {
  if (route.edges.empty()) return route.origin == route.destination;
  NodeId at = route.origin;
  for (EdgeId e : route.edges) {
    if (e >= net.edge_count() || net.edge(e).from != at) return false;
    at = net.edge(e).to;
  }
  return at == route.destination;
}

OdSampler::OdSampler(const RoadNetwork& net, std::size_t max_attempts)
    : net_(&net), max_attempts_(max_attempts), scc_(strong_components(net)) {}

bool OdSampler::reachable(NodeId from, NodeId to) const {
  if (scc_[from] == scc_[to]) return true;
  std::vector<char> seen(net_->node_count(), 0);
  std::vector<NodeId> frontier{from};
  seen[from] = 1;
  while (!frontier.empty()) {
    NodeId u = frontier.back();
    frontier.pop_back();
    for (EdgeId e : net_->out_edges(u)) {
      NodeId v = net_->edge(e).to;
      if (v == to) return true;
      if (!seen[v]) {
        seen[v] = 1;
        frontier.push_back(v);
      }
    }
  }
  return false;
}

ODPair OdSampler::sample(Rng& rng) const {
  const auto n = net_->node_count();
  if (n < 2) throw SamplingExhausted("network has fewer than 2 nodes");
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  for (std::size_t attempt = 0; attempt < max_attempts_; ++attempt) {
    const NodeId o = pick(rng);
    const NodeId d = pick(rng);
    if (o != d && reachable(o, d)) return {o, d};
  }
  throw SamplingExhausted(fmt::format(
      "no reachable OD pair after {} draws; the network looks fragmented", max_attempts_));
}

ODPair sample_random_od(const RoadNetwork& net, Rng& rng, std::size_t max_attempts) {
  return OdSampler(net, max_attempts).sample(rng);
}

}  // namespace polaris
