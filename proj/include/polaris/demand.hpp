#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polaris/zoning.hpp"

namespace polaris {

struct ODCell {
  ZoneCoord origin;
  ZoneCoord destination;
  double trips = 0.0;
  bool operator==(const ODCell&) const = default;
};

/// Sparse trip-count matrix over grid tiles, kept sorted by (origin, dest).
struct ODMatrix {
  std::vector<ODCell> cells;

  double total() const;
  void normalize_order();
  bool operator==(const ODMatrix&) const = default;
};

/// `<row:col> <row:col> <count>` per line.
void write_od_matrix(const ODMatrix& matrix, std::ostream& out);
void save_od_matrix(const ODMatrix& matrix, const std::string& path);
ODMatrix read_od_matrix(std::istream& in, const std::string& source = "<stream>");
ODMatrix load_od_matrix(const std::string& path);

struct Hotspot {
  ZoneCoord center;
  double weight = 1.0;
  double sigma = 1.0;  // in cells
};

/// Parses `row:col[:weight[:sigma]]` entries separated by ';'.
std::vector<Hotspot> parse_hotspots(const std::string& spec);

/// Gravity-style synthetic matrix for desk experiments. Each tile gets an
/// attraction a(z) = 0.02 + sum_h weight_h * exp(-d(z, h)^2 / (2 sigma_h^2))
/// and cell (o, d) receives round(100 * a(o) * a(d)) trips plus a seeded
/// jitter of 0 or 1. Mass therefore peaks on hotspot-to-hotspot cells.
ODMatrix synth_od_matrix(const Zoning& zoning, const std::vector<Hotspot>& hotspots,
                         std::uint64_t seed);

struct TripRequest {
  std::size_t id = 0;
  EdgeId origin_edge = 0;
  EdgeId destination_edge = 0;
  double start_offset = 0.0;  // seconds within the hour, [0, 3600)
};

struct Demand {
  std::vector<TripRequest> trips;
  std::uint64_t seed = 0;
};

/// Draws N trips: an OD cell with probability proportional to its count, then
/// an edge uniformly among those whose from-node lies in each tile, then a
/// uniform start time. Edges are bucketed by the zone of their from-node.
/// Throws EmptyZone if a drawn tile has no usable edge after bounded retries.
Demand sample_demand(const ODMatrix& matrix, const Zoning& zoning, const RoadNetwork& net,
                     std::size_t n, std::uint64_t seed);

/// `<trip_id> <origin_edge> <destination_edge> <start_offset>` using source ids.
void write_demand(const Demand& demand, const RoadNetwork& net, std::ostream& out);
Demand read_demand(std::istream& in, const RoadNetwork& net,
                   const std::string& source = "<stream>");

}  // namespace polaris
