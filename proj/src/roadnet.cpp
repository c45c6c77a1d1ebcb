#include "polaris/roadnet.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "polaris/errors.hpp"
#include "polaris/text.hpp"

namespace polaris {

namespace {

constexpr double kEarthRadius = 6371008.8;  // meters, mean radius

double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

std::vector<std::uint32_t> weak_component_sizes(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& arcs,
    std::vector<std::uint32_t>& comp) {
  // union-find over undirected arcs
  std::vector<std::uint32_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (auto [a, b] : arcs) {
    auto ra = find(static_cast<std::uint32_t>(a));
    auto rb = find(static_cast<std::uint32_t>(b));
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  comp.assign(n, 0);
  std::vector<std::uint32_t> sizes(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    comp[i] = find(static_cast<std::uint32_t>(i));
    ++sizes[comp[i]];
  }
  return sizes;
}

// Iterative Tarjan; labels each node with its SCC id.
std::vector<std::uint32_t> tarjan(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (auto [a, b] : arcs) ++offsets[a + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::uint32_t> targets(arcs.size());
  {
    auto fill = offsets;
    for (auto [a, b] : arcs) targets[fill[a]++] = static_cast<std::uint32_t>(b);
  }

  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), next_arc(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack, call;
  std::uint32_t counter = 0;
  std::uint32_t components = 0;
  std::vector<std::uint32_t> label(n, 0);

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back(static_cast<std::uint32_t>(root));
    index[root] = low[root] = counter++;
    next_arc[root] = offsets[root];
    stack.push_back(static_cast<std::uint32_t>(root));
    on_stack[root] = 1;
    while (!call.empty()) {
      std::uint32_t v = call.back();
      if (next_arc[v] < offsets[v + 1]) {
        std::uint32_t w = targets[next_arc[v]++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          next_arc[w] = offsets[w];
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          label[w] = components;
        } while (w != v);
        ++components;
      }
    }
  }
  return label;
}

std::size_t largest_scc_size(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
  auto label = tarjan(n, arcs);
  std::vector<std::size_t> sizes(n, 0);
  for (auto l : label) ++sizes[l];
  return n == 0 ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

NetworkDraft to_draft(const RoadNetwork& net) {
  NetworkDraft d;
  d.nodes.reserve(net.node_count());
  for (const auto& n : net.nodes()) d.nodes.push_back({n.name, n.lon, n.lat, n.regulation});
  d.edges.reserve(net.edge_count());
  for (const auto& e : net.edges()) {
    d.edges.push_back({e.name, net.node(e.from).name, net.node(e.to).name,
                       e.length, e.speed_limit, e.lanes});
  }
  return d;
}

}  // namespace

RoadNetwork::RoadNetwork(std::vector<RoadNode> nodes, std::vector<RoadEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const std::size_t n = nodes_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.from >= n || e.to >= n) {
      throw ValidationError(fmt::format("edge {} references a node outside [0, {})",
                                        e.name.empty() ? std::to_string(i) : e.name, n));
    }
    ++out_offsets_[e.from + 1];
    ++in_offsets_[e.to + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_edges_.resize(edges_.size());
  in_edges_.resize(edges_.size());
  auto out_fill = out_offsets_;
  auto in_fill = in_offsets_;
  // Edge ids ascend within each bucket.
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_edges_[out_fill[edges_[i].from]++] = static_cast<EdgeId>(i);
    in_edges_[in_fill[edges_[i].to]++] = static_cast<EdgeId>(i);
  }

  if (n > 0) {
    bounds_ = {nodes_[0].lon, nodes_[0].lat, nodes_[0].lon, nodes_[0].lat};
    for (const auto& node : nodes_) {
      bounds_.min_lon = std::min(bounds_.min_lon, node.lon);
      bounds_.min_lat = std::min(bounds_.min_lat, node.lat);
      bounds_.max_lon = std::max(bounds_.max_lon, node.lon);
      bounds_.max_lat = std::max(bounds_.max_lat, node.lat);
    }
  }
}

bool ValidationReport::has_errors() const {
  return !dangling.empty() || !bad_attributes.empty() || !duplicates.empty();
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& s : duplicates) out += "duplicate: " + s + "\n";
  for (const auto& s : dangling) out += "dangling: " + s + "\n";
  for (const auto& s : bad_attributes) out += "attribute: " + s + "\n";
  if (largest_scc < 2) out += "note: no strongly connected component with >= 2 nodes\n";
  if (unreachable_nodes > 0) {
    out += fmt::format("unreachable: {} node(s) outside the main component\n",
                       unreachable_nodes);
  }
  return out;
}

NetworkDraft parse_network(std::istream& in, const std::string& source) {
  NetworkDraft draft;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(fmt::format("{}:{}: {}", source, lineno, msg));
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields[0] == "NODE") {
      if (fields.size() != 4 && fields.size() != 5) {
        throw fail("NODE expects <id> <lon> <lat> [regulated:0|1]");
      }
      NetworkDraft::Node node;
      node.id = std::string(fields[1]);
      if (!parse_number(fields[2], node.lon)) throw fail("bad lon '" + std::string(fields[2]) + "'");
      if (!parse_number(fields[3], node.lat)) throw fail("bad lat '" + std::string(fields[3]) + "'");
      if (fields.size() == 5) {
        if (fields[4] == "1") {
          node.regulation = Regulation::Regulated;
        } else if (fields[4] != "0") {
          throw fail("regulated flag must be 0 or 1");
        }
      }
      draft.nodes.push_back(std::move(node));
    } else if (fields[0] == "EDGE") {
      if (fields.size() != 6 && fields.size() != 7) {
        throw fail("EDGE expects <id> <from> <to> <length_m> <speed_mps> [lanes]");
      }
      NetworkDraft::Edge edge;
      edge.id = std::string(fields[1]);
      edge.from = std::string(fields[2]);
      edge.to = std::string(fields[3]);
      if (!parse_number(fields[4], edge.length)) throw fail("bad length '" + std::string(fields[4]) + "'");
      if (!parse_number(fields[5], edge.speed)) throw fail("bad speed '" + std::string(fields[5]) + "'");
      if (fields.size() == 7 && !parse_number(fields[6], edge.lanes)) {
        throw fail("bad lane count '" + std::string(fields[6]) + "'");
      }
      draft.edges.push_back(std::move(edge));
    } else {
      throw fail("unknown record '" + std::string(fields[0]) + "'");
    }
  }
  return draft;
}

ValidationReport validate(const NetworkDraft& draft) {
  ValidationReport report;
  std::unordered_map<std::string, std::size_t> node_index;
  for (std::size_t i = 0; i < draft.nodes.size(); ++i) {
    if (!node_index.emplace(draft.nodes[i].id, i).second) {
      report.duplicates.push_back("node " + draft.nodes[i].id);
    }
  }
  std::unordered_map<std::string, std::size_t> edge_seen;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  arcs.reserve(draft.edges.size());
  for (std::size_t i = 0; i < draft.edges.size(); ++i) {
    const auto& e = draft.edges[i];
    if (!edge_seen.emplace(e.id, i).second) report.duplicates.push_back("edge " + e.id);
    auto from = node_index.find(e.from);
    auto to = node_index.find(e.to);
    if (from == node_index.end()) {
      report.dangling.push_back(fmt::format("edge {} from unknown node {}", e.id, e.from));
    }
    if (to == node_index.end()) {
      report.dangling.push_back(fmt::format("edge {} to unknown node {}", e.id, e.to));
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      report.bad_attributes.push_back(fmt::format("edge {} length {}", e.id, e.length));
    }
    if (!(e.speed > 0.0) || !std::isfinite(e.speed)) {
      report.bad_attributes.push_back(fmt::format("edge {} speed {}", e.id, e.speed));
    }
    if (e.lanes < 1) {
      report.bad_attributes.push_back(fmt::format("edge {} lanes {}", e.id, e.lanes));
    }
    if (from != node_index.end() && to != node_index.end()) {
      arcs.emplace_back(from->second, to->second);
    }
  }

  const std::size_t n = draft.nodes.size();
  std::vector<std::uint32_t> comp;
  auto sizes = weak_component_sizes(n, arcs, comp);
  std::size_t largest = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  report.unreachable_nodes = n - largest;
  report.largest_scc = largest_scc_size(n, arcs);
  return report;
}

ValidationReport validate(const RoadNetwork& net) { return validate(to_draft(net)); }

RoadNetwork build_network(const NetworkDraft& draft) {
  auto report = validate(draft);
  if (report.has_errors()) throw ValidationError(report.summary());

  std::unordered_map<std::string, NodeId> node_index;
  std::vector<RoadNode> nodes;
  nodes.reserve(draft.nodes.size());
  for (const auto& n : draft.nodes) {
    node_index.emplace(n.id, static_cast<NodeId>(nodes.size()));
    nodes.push_back({n.id, n.lon, n.lat, n.regulation});
  }
  std::vector<RoadEdge> edges;
  edges.reserve(draft.edges.size());
  for (const auto& e : draft.edges) {
    edges.push_back({e.id, node_index.at(e.from), node_index.at(e.to), e.length,
                     e.speed, e.lanes});
  }
  return RoadNetwork(std::move(nodes), std::move(edges));
}

RoadNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open network file " + path);
  return build_network(parse_network(in, path));
}

void write_network(const RoadNetwork& net, std::ostream& out) {
  for (const auto& n : net.nodes()) {
    fmt::print(out, "NODE {} {} {} {}\n", n.name, n.lon, n.lat,
               n.regulation == Regulation::Regulated ? 1 : 0);
  }
  for (const auto& e : net.edges()) {
    fmt::print(out, "EDGE {} {} {} {} {} {}\n", e.name, net.node(e.from).name,
               net.node(e.to).name, e.length, e.speed_limit, e.lanes);
  }
}

void save_network(const RoadNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write network file " + path);
  write_network(net, out);
}

void write_id_map(const RoadNetwork& net, std::ostream& out) {
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    fmt::print(out, "NODE {} {}\n", i, net.node(static_cast<NodeId>(i)).name);
  }
  for (std::size_t i = 0; i < net.edge_count(); ++i) {
    fmt::print(out, "EDGE {} {}\n", i, net.edge(static_cast<EdgeId>(i)).name);
  }
}

std::vector<std::uint32_t> strong_components(const RoadNetwork& net) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  arcs.reserve(net.edge_count());
  for (const auto& e : net.edges()) arcs.emplace_back(e.from, e.to);
  return tarjan(net.node_count(), arcs);
}

WeightMap free_flow_weights(const RoadNetwork& net) {
  WeightMap w(net.edge_count());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& e = net.edge(static_cast<EdgeId>(i));
    w[i] = e.length / e.speed_limit;
  }
  return w;
}

PlanarPoint project(GeoPoint p, GeoPoint anchor) {
  const double scale = std::cos(deg2rad(anchor.lat));
  return {kEarthRadius * deg2rad(p.lon - anchor.lon) * scale,
          kEarthRadius * deg2rad(p.lat - anchor.lat)};
}

GeoPoint unproject(PlanarPoint p, GeoPoint anchor) {
  const double scale = std::cos(deg2rad(anchor.lat));
  return {anchor.lon + p.x / (kEarthRadius * scale) * 180.0 / std::numbers::pi,
          anchor.lat + p.y / kEarthRadius * 180.0 / std::numbers::pi};
}

PlanarPoint project(const RoadNetwork& net, NodeId id) {
  const auto& b = net.bounds();
  const auto& n = net.node(id);
  return project(GeoPoint{n.lon, n.lat}, GeoPoint{b.min_lon, b.min_lat});
}

}  // namespace polaris
