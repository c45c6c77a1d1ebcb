#include "polaris/zoning.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polaris/text.hpp"

namespace polaris {

namespace {

// Slack for extents that land a hair above a whole number of cells after the
// degree round trip.
constexpr double kCellSlack = 1e-9;

int cell_count(double extent, double cell) {
  return std::max(1, static_cast<int>(std::ceil(extent / cell - kCellSlack)));
}

}  // namespace

std::string to_string(ZoneCoord z) { return fmt::format("{}:{}", z.row, z.col); }

std::optional<ZoneCoord> parse_zone(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  ZoneCoord z;
  if (!parse_number(text.substr(0, colon), z.row) ||
      !parse_number(text.substr(colon + 1), z.col)) {
    return std::nullopt;
  }
  return z;
}

Zoning::Zoning(double cell_size, double width, double height) : cell_size_(cell_size) {
  if (!(cell_size > 0.0)) throw std::invalid_argument("cell size must be positive");
  cols_ = cell_count(width, cell_size);
  rows_ = cell_count(height, cell_size);
}

ZoneCoord Zoning::cell_of(PlanarPoint p) const {
  auto index = [&](double v, int limit) {
    int k = static_cast<int>(std::floor(v / cell_size_ + kCellSlack));
    return std::clamp(k, 0, limit - 1);
  };
  return {index(p.y, rows_), index(p.x, cols_)};
}

Zoning build_tiling(const RoadNetwork& net, double cell_size) {
  const auto& b = net.bounds();
  const auto far = project(GeoPoint{b.max_lon, b.max_lat}, GeoPoint{b.min_lon, b.min_lat});
  Zoning zoning(cell_size, far.x, far.y);
  std::vector<ZoneId> zones(net.node_count());
  for (std::size_t i = 0; i < zones.size(); ++i) {
    zones[i] = zoning.id(zoning.cell_of(project(net, static_cast<NodeId>(i))));
  }
  zoning.assign_nodes(std::move(zones));
  return zoning;
}

}  // namespace polaris
