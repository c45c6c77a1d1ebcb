#include "polaris/demand.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "polaris/errors.hpp"
#include "polaris/rng.hpp"
#include "polaris/text.hpp"

namespace polaris {

namespace {

constexpr double kHour = 3600.0;
constexpr int kDrawAttempts = 100;

}  // namespace

double ODMatrix::total() const {
  double sum = 0.0;
  for (const auto& c : cells) sum += c.trips;
  return sum;
}

void ODMatrix::normalize_order() {
  std::stable_sort(cells.begin(), cells.end(), [](const ODCell& a, const ODCell& b) {
    return std::tie(a.origin, a.destination) < std::tie(b.origin, b.destination);
  });
}

void write_od_matrix(const ODMatrix& matrix, std::ostream& out) {
  for (const auto& c : matrix.cells) {
    fmt::print(out, "{} {} {}\n", to_string(c.origin), to_string(c.destination), c.trips);
  }
}

void save_od_matrix(const ODMatrix& matrix, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write OD matrix " + path);
  write_od_matrix(matrix, out);
}

ODMatrix read_od_matrix(std::istream& in, const std::string& source) {
  ODMatrix matrix;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    return ParseError(fmt::format("{}:{}: {}", source, lineno, msg));
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto f = split_fields(line);
    if (f.empty()) continue;
    if (f.size() != 3) throw fail("expected <row:col> <row:col> <count>");
    auto o = parse_zone(f[0]);
    auto d = parse_zone(f[1]);
    if (!o || !d) throw fail("zone ids must look like row:col");
    ODCell cell{*o, *d, 0.0};
    if (!parse_number(f[2], cell.trips) || !(cell.trips >= 0.0) || !std::isfinite(cell.trips)) {
      throw fail("trip count must be a finite number >= 0");
    }
    matrix.cells.push_back(cell);
  }
  if (matrix.cells.empty()) throw ParseError(source + ": OD matrix is empty");
  if (!(matrix.total() > 0.0)) throw ParseError(source + ": OD matrix has zero total mass");
  return matrix;
}

ODMatrix load_od_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open OD matrix " + path);
  return read_od_matrix(in, path);
}

std::vector<Hotspot> parse_hotspots(const std::string& spec) {
  std::vector<Hotspot> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    std::vector<std::string_view> parts;
    std::string_view rest(item);
    while (true) {
      auto colon = rest.find(':');
      parts.push_back(rest.substr(0, colon));
      if (colon == std::string_view::npos) break;
      rest = rest.substr(colon + 1);
    }
    Hotspot h;
    bool ok = parts.size() >= 2 && parts.size() <= 4 &&
              parse_number(parts[0], h.center.row) && parse_number(parts[1], h.center.col);
    if (ok && parts.size() >= 3) ok = parse_number(parts[2], h.weight) && h.weight > 0.0;
    if (ok && parts.size() == 4) ok = parse_number(parts[3], h.sigma) && h.sigma > 0.0;
    if (!ok) throw ParseError("bad hotspot '" + item + "', expected row:col[:weight[:sigma]]");
    out.push_back(h);
  }
  return out;
}

ODMatrix synth_od_matrix(const Zoning& zoning, const std::vector<Hotspot>& hotspots,
                         std::uint64_t seed) {
  constexpr double kBackground = 0.02;
  constexpr double kScale = 100.0;
  const std::size_t zones = zoning.zone_count();
  std::vector<double> attraction(zones, kBackground);
  for (std::size_t z = 0; z < zones; ++z) {
    const auto c = zoning.coord(static_cast<ZoneId>(z));
    for (const auto& h : hotspots) {
      const double dr = c.row - h.center.row;
      const double dc = c.col - h.center.col;
      attraction[z] += h.weight * std::exp(-(dr * dr + dc * dc) / (2.0 * h.sigma * h.sigma));
    }
  }
  Rng rng(seed);
  std::bernoulli_distribution jitter(0.5);
  ODMatrix matrix;
  for (std::size_t o = 0; o < zones; ++o) {
    for (std::size_t d = 0; d < zones; ++d) {
      const double trips = std::round(kScale * attraction[o] * attraction[d]) +
                           (jitter(rng) ? 1.0 : 0.0);
      if (trips > 0.0) {
        matrix.cells.push_back({zoning.coord(static_cast<ZoneId>(o)),
                                zoning.coord(static_cast<ZoneId>(d)), trips});
      }
    }
  }
  return matrix;
}

Demand sample_demand(const ODMatrix& matrix, const Zoning& zoning, const RoadNetwork& net,
                     std::size_t n, std::uint64_t seed) {
  if (!(matrix.total() > 0.0)) throw EmptyZone("OD matrix has no trips to sample");
  std::vector<std::vector<EdgeId>> edges_in_zone(zoning.zone_count());
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    edges_in_zone[zoning.zone_of_node(net.edge(static_cast<EdgeId>(e)).from)].push_back(
        static_cast<EdgeId>(e));
  }
  auto bucket = [&](ZoneCoord z) -> const std::vector<EdgeId>* {
    if (!zoning.contains(z)) return nullptr;
    const auto& b = edges_in_zone[zoning.id(z)];
    return b.empty() ? nullptr : &b;
  };

  std::vector<double> weights;
  weights.reserve(matrix.cells.size());
  for (const auto& c : matrix.cells) weights.push_back(c.trips);
  std::discrete_distribution<std::size_t> pick_cell(weights.begin(), weights.end());
  std::uniform_real_distribution<double> start(0.0, kHour);

  Rng rng(seed);
  Demand demand;
  demand.seed = seed;
  demand.trips.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    bool placed = false;
    std::string last_problem;
    for (int attempt = 0; attempt < kDrawAttempts && !placed; ++attempt) {
      const auto& cell = matrix.cells[pick_cell(rng)];
      const auto* from = bucket(cell.origin);
      const auto* to = bucket(cell.destination);
      if (!from || !to) {
        last_problem = fmt::format("tile {} has no edges", to_string(from ? cell.destination : cell.origin));
        continue;
      }
      std::uniform_int_distribution<std::size_t> pick_o(0, from->size() - 1);
      std::uniform_int_distribution<std::size_t> pick_d(0, to->size() - 1);
      const EdgeId eo = (*from)[pick_o(rng)];
      const EdgeId ed = (*to)[pick_d(rng)];
      if (eo == ed) {
        last_problem = fmt::format("tile {} offers a single edge for both ends",
                                   to_string(cell.origin));
        continue;
      }
      demand.trips.push_back({t, eo, ed, start(rng)});
      placed = true;
    }
    if (!placed) {
      throw EmptyZone(fmt::format("trip {}: no valid edge pair after {} draws ({})", t,
                                  kDrawAttempts, last_problem));
    }
  }
  return demand;
}

void write_demand(const Demand& demand, const RoadNetwork& net, std::ostream& out) {
  for (const auto& t : demand.trips) {
    fmt::print(out, "{} {} {} {}\n", t.id, net.edge(t.origin_edge).name,
               net.edge(t.destination_edge).name, t.start_offset);
  }
}

Demand read_demand(std::istream& in, const RoadNetwork& net, const std::string& source) {
  std::unordered_map<std::string_view, EdgeId> by_name;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    by_name.emplace(net.edge(static_cast<EdgeId>(e)).name, static_cast<EdgeId>(e));
  }
  Demand demand;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    return ParseError(fmt::format("{}:{}: {}", source, lineno, msg));
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto f = split_fields(line);
    if (f.empty()) continue;
    if (f.size() != 4) throw fail("expected <trip_id> <origin_edge> <destination_edge> <start>");
    TripRequest t;
    if (!parse_number(f[0], t.id)) throw fail("bad trip id");
    auto o = by_name.find(f[1]);
    auto d = by_name.find(f[2]);
    if (o == by_name.end() || d == by_name.end()) throw fail("unknown edge id");
    t.origin_edge = o->second;
    t.destination_edge = d->second;
    if (!parse_number(f[3], t.start_offset) || t.start_offset < 0.0 || t.start_offset >= kHour) {
      throw fail("start offset must be in [0, 3600)");
    }
    demand.trips.push_back(t);
  }
  return demand;
}

}  // namespace polaris
