#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polaris/roadnet.hpp"

namespace polaris {

/// Dense zone index, row-major over the tiling grid.
using ZoneId = std::uint32_t;

struct ZoneCoord {
  int row = 0;
  int col = 0;
  bool operator==(const ZoneCoord&) const = default;
  auto operator<=>(const ZoneCoord&) const = default;
};

/// Text form `row:col`.
std::string to_string(ZoneCoord z);
std::optional<ZoneCoord> parse_zone(std::string_view text);

/// Square-cell grid anchored at the network's bounding-box min corner.
///
/// Cells are half-open [k*size, (k+1)*size) along each axis, except the last
/// row/column, which also owns the far edge of the bounding box.
class Zoning {
 public:
  Zoning() = default;
  Zoning(double cell_size, double width, double height);

  double cell_size() const noexcept { return cell_size_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t zone_count() const noexcept {
    return static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
  }

  ZoneCoord cell_of(PlanarPoint p) const;
  ZoneId id(ZoneCoord z) const { return static_cast<ZoneId>(z.row * cols_ + z.col); }
  ZoneCoord coord(ZoneId id) const {
    return {static_cast<int>(id) / cols_, static_cast<int>(id) % cols_};
  }
  bool contains(ZoneCoord z) const {
    return z.row >= 0 && z.col >= 0 && z.row < rows_ && z.col < cols_;
  }

  ZoneId zone_of_node(NodeId n) const { return node_zone_[n]; }
  const std::vector<ZoneId>& node_zones() const noexcept { return node_zone_; }
  void assign_nodes(std::vector<ZoneId> zones) { node_zone_ = std::move(zones); }

 private:
  double cell_size_ = 1000.0;
  int rows_ = 1;
  int cols_ = 1;
  std::vector<ZoneId> node_zone_;
};

/// Tiles the network bounding box with `cell_size`-meter squares and assigns
/// every node to exactly one cell.
Zoning build_tiling(const RoadNetwork& net, double cell_size = 1000.0);

}  // namespace polaris
