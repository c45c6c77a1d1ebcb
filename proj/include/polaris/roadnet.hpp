#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace polaris {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class Regulation : std::uint8_t { Unregulated = 0, Regulated = 1 };

struct RoadNode {
  std::string name;  // identifier as it appeared in the source file
  double lon = 0.0;
  double lat = 0.0;
  Regulation regulation = Regulation::Unregulated;
};

struct RoadEdge {
  std::string name;
  NodeId from = 0;
  NodeId to = 0;
  double length = 0.0;       // meters
  double speed_limit = 0.0;  // meters per second
  int lanes = 1;
};

struct BoundingBox {
  double min_lon = 0.0, min_lat = 0.0;
  double max_lon = 0.0, max_lat = 0.0;
};

/// Per-edge travel cost in seconds, indexed by EdgeId.
using WeightMap = std::vector<double>;

/// Immutable directed road graph with dense ids and CSR adjacency.
class RoadNetwork {
 public:
  RoadNetwork() = default;

  /// Builds adjacency from already-densified parts. Throws ValidationError on
  /// an endpoint outside [0, nodes.size()); attribute checks are the job of
  /// validate().
  RoadNetwork(std::vector<RoadNode> nodes, std::vector<RoadEdge> edges);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const RoadNode& node(NodeId id) const { return nodes_[id]; }
  const RoadEdge& edge(EdgeId id) const { return edges_[id]; }
  std::span<const RoadNode> nodes() const noexcept { return nodes_; }
  std::span<const RoadEdge> edges() const noexcept { return edges_; }

  std::span<const EdgeId> out_edges(NodeId id) const {
    return {out_edges_.data() + out_offsets_[id],
            out_edges_.data() + out_offsets_[id + 1]};
  }
  std::span<const EdgeId> in_edges(NodeId id) const {
    return {in_edges_.data() + in_offsets_[id],
            in_edges_.data() + in_offsets_[id + 1]};
  }

  const BoundingBox& bounds() const noexcept { return bounds_; }

 private:
  std::vector<RoadNode> nodes_;
  std::vector<RoadEdge> edges_;
  std::vector<std::uint32_t> out_offsets_{0};
  std::vector<EdgeId> out_edges_;
  std::vector<std::uint32_t> in_offsets_{0};
  std::vector<EdgeId> in_edges_;
  BoundingBox bounds_;
};

struct ValidationReport {
  std::vector<std::string> dangling;      // edges naming an unknown node
  std::vector<std::string> bad_attributes;  // non-positive length/speed/lanes
  std::vector<std::string> duplicates;    // repeated node or edge ids
  /// Nodes outside the largest weakly connected component.
  std::size_t unreachable_nodes = 0;
  std::size_t largest_scc = 0;

  /// True when the network cannot be loaded: dangling references, bad
  /// attributes, duplicates, or no strongly connected component of size >= 2.
  bool has_errors() const;
  bool empty() const { return !has_errors() && unreachable_nodes == 0; }
  std::string summary() const;
};

/// Parsed but unvalidated network text; endpoints are still source names.
struct NetworkDraft {
  struct Node {
    std::string id;
    double lon = 0.0, lat = 0.0;
    Regulation regulation = Regulation::Unregulated;
  };
  struct Edge {
    std::string id, from, to;
    double length = 0.0, speed = 0.0;
    int lanes = 1;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

NetworkDraft parse_network(std::istream& in, const std::string& source = "<stream>");
ValidationReport validate(const NetworkDraft& draft);
ValidationReport validate(const RoadNetwork& net);

/// Validates and densifies; throws ValidationError with the report summary.
RoadNetwork build_network(const NetworkDraft& draft);

/// Parses, validates and builds. Throws ParseError / ValidationError.
RoadNetwork load_network(const std::string& path);

void write_network(const RoadNetwork& net, std::ostream& out);
void save_network(const RoadNetwork& net, const std::string& path);

/// Sidecar mapping dense ids back to source ids: `NODE <dense> <name>` and
/// `EDGE <dense> <name>`.
void write_id_map(const RoadNetwork& net, std::ostream& out);

/// Strongly connected component label per node.
std::vector<std::uint32_t> strong_components(const RoadNetwork& net);

/// Free-flow travel time: length / speed_limit per edge.
WeightMap free_flow_weights(const RoadNetwork& net);

struct PlanarPoint {
  double x = 0.0, y = 0.0;
};
struct GeoPoint {
  double lon = 0.0, lat = 0.0;
};

/// Equirectangular projection to meters east/north of `anchor`, scaled by the
/// anchor latitude.
PlanarPoint project(GeoPoint p, GeoPoint anchor);
GeoPoint unproject(PlanarPoint p, GeoPoint anchor);

/// Node position relative to the bounding-box min corner.
PlanarPoint project(const RoadNetwork& net, NodeId id);

}  // namespace polaris
