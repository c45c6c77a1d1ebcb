#include "polaris/kroad.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "polaris/errors.hpp"
#include "polaris/kernels.hpp"
#include "polaris/text.hpp"

namespace polaris {

std::vector<std::uint32_t> compute_kroad(std::span<const Route> routes,
                                         const Zoning& zoning, std::size_t edge_count) {
  // One key per traversal: edge in the high word, origin zone in the low word.
  std::vector<std::uint64_t> keys;
  for (const auto& r : routes) {
    const std::uint64_t zone = zoning.zone_of_node(r.origin);
    for (EdgeId e : r.edges) keys.push_back((std::uint64_t{e} << 32) | zone);
  }
  std::sort(keys.begin(), keys.end());

  std::vector<std::uint32_t> kroad(edge_count, 0);
  std::vector<std::pair<std::uint64_t, ZoneId>> flows;  // (count, zone)
  std::size_t i = 0;
  while (i < keys.size()) {
    const auto edge = static_cast<EdgeId>(keys[i] >> 32);
    flows.clear();
    std::uint64_t total = 0;
    while (i < keys.size() && (keys[i] >> 32) == edge) {
      const auto zone = static_cast<ZoneId>(keys[i] & 0xffffffffu);
      std::uint64_t count = 0;
      while (i < keys.size() && keys[i] == ((std::uint64_t{edge} << 32) | zone)) {
        ++count;
        ++i;
      }
      flows.emplace_back(count, zone);
      total += count;
    }
    std::sort(flows.begin(), flows.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::uint64_t covered = 0;
    std::uint32_t drivers = 0;
    for (const auto& [count, zone] : flows) {
      covered += count;
      ++drivers;
      if (covered * kDriverShareDenominator >= total * kDriverShareNumerator) break;
    }
    kroad[edge] = drivers;
  }
  return kroad;
}

std::vector<double> min_max_normalize(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.0);
  if (values.empty()) return out;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo, max = *hi;
  if (max == min) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - min) / (max - min);
  return out;
}

KRoadLayers KRoadLayers::truncated(std::size_t m) const {
  KRoadLayers out{v, seed, {}};
  out.layers.assign(layers.begin(), layers.begin() + static_cast<std::ptrdiff_t>(std::min(m, layers.size())));
  return out;
}

KRoadLayers compute_kroad_layers(const RoadNetwork& net, std::size_t v, std::size_t m,
                                 std::uint64_t seed, const KRoadOptions& options) {
  if (v < 1 || m < 1) throw std::invalid_argument("K_road layers need v >= 1 and m >= 1");
  const Zoning zoning = build_tiling(net, options.cell_size);
  const OdSampler sampler(net, options.max_sampling_attempts);
  Rng rng(seed);

  KRoadLayers result{v, seed, {}};
  result.layers.reserve(m);
  WeightMap w = free_flow_weights(net);
  std::vector<ODPair> pairs;

  for (std::size_t l = 0; l < m; ++l) {
    if (l == 0 || options.resample_per_layer) {
      pairs.clear();
      pairs.reserve(v);
      for (std::size_t i = 0; i < v; ++i) pairs.push_back(sampler.sample(rng));
    }
    auto routed = options.parallel ? route_batch(net, w, pairs)
                                   : route_batch_serial(net, w, pairs);
    std::vector<Route> routes;
    routes.reserve(routed.size());
    for (auto& r : routed) {
      // The sampler only yields reachable pairs.
      routes.push_back(std::move(*r));
    }

    auto counts = compute_kroad(routes, zoning, net.edge_count());
    std::vector<double> raw(counts.begin(), counts.end());
    result.layers.push_back(min_max_normalize(raw));

    scale_weights(w, result.layers.back());
    if (options.on_layer_weights) options.on_layer_weights(l, w);
  }
  return result;
}

std::string_view to_string(PopularityClass c) {
  switch (c) {
    case PopularityClass::Low: return "low";
    case PopularityClass::Medium: return "medium";
    case PopularityClass::High: return "high";
  }
  return "?";
}

std::vector<PopularityClass> classify_popularity(std::span<const double> layer0) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double x : layer0) {
    if (x > 0.0) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (!(hi > lo)) {
    throw DegenerateDistribution(
        "popularity binning needs at least two distinct positive values");
  }

  // Position in bin units: 0 at lo, 3 at hi.
  constexpr double kBins = 3.0;
  constexpr double kEdgeSlack = 1e-9;
  const double log_lo = std::log(lo);
  const double span = std::log(hi) - log_lo;
  std::vector<PopularityClass> out(layer0.size(), PopularityClass::Low);
  for (std::size_t i = 0; i < layer0.size(); ++i) {
    const double x = layer0[i];
    if (!(x > 0.0)) continue;
    const double t = (std::log(x) - log_lo) / span * kBins;
    if (t > 2.0 + kEdgeSlack) {
      out[i] = PopularityClass::High;
    } else if (t > 1.0 + kEdgeSlack) {
      out[i] = PopularityClass::Medium;
    }
  }
  return out;
}

void write_layers(const KRoadLayers& layers, std::ostream& out) {
  fmt::print(out, "KROAD m={} v={} seed={}\n", layers.m(), layers.v, layers.seed);
  for (std::size_t e = 0; e < layers.edge_count(); ++e) {
    std::string line = std::to_string(e);
    for (std::size_t l = 0; l < layers.m(); ++l) {
      line += ' ';
      line += fmt::format("{}", layers.layers[l][e]);
    }
    line += '\n';
    out << line;
  }
}

void save_layers(const KRoadLayers& layers, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write layers file " + path);
  write_layers(layers, out);
}

KRoadLayers read_layers(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  auto parse_fail = [&](const std::string& msg) {
    return ParseError(fmt::format("{}:{}: {}", source, lineno, msg));
  };
  auto schema_fail = [&](const std::string& msg) {
    return SchemaMismatch(fmt::format("{}:{}: {}", source, lineno, msg));
  };

  std::vector<std::string_view> header;
  while (header.empty() && std::getline(in, line)) {
    ++lineno;
    header = split_fields(line);
  }
  if (header.empty()) throw parse_fail("missing KROAD header");
  if (header.size() != 4 || header[0] != "KROAD") {
    throw parse_fail("header must be 'KROAD m=<m> v=<v> seed=<seed>'");
  }
  auto keyed = [&](std::string_view field, std::string_view key, auto& value) {
    if (field.substr(0, key.size()) != key || !parse_number(field.substr(key.size()), value)) {
      throw parse_fail(fmt::format("expected {}<number>, got '{}'", key, field));
    }
  };
  std::size_t m = 0;
  KRoadLayers layers;
  keyed(header[1], "m=", m);
  keyed(header[2], "v=", layers.v);
  keyed(header[3], "seed=", layers.seed);
  if (m < 1) throw schema_fail("m must be >= 1");
  layers.layers.assign(m, {});

  std::size_t expected_edge = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    std::size_t edge = 0;
    if (!parse_number(fields[0], edge)) throw parse_fail("bad edge id '" + std::string(fields[0]) + "'");
    if (edge != expected_edge) {
      throw schema_fail(fmt::format("edge ids must be dense and ordered; expected {}, got {}",
                                    expected_edge, edge));
    }
    if (fields.size() - 1 != m) {
      throw schema_fail(fmt::format("header says m={} but edge {} has {} values", m,
                                    edge, fields.size() - 1));
    }
    for (std::size_t l = 0; l < m; ++l) {
      double k = 0.0;
      if (!parse_number(fields[l + 1], k)) throw parse_fail("bad value '" + std::string(fields[l + 1]) + "'");
      if (!(k >= 0.0 && k <= 1.0)) throw schema_fail(fmt::format("value {} outside [0, 1]", k));
      layers.layers[l].push_back(k);
    }
    ++expected_edge;
  }
  return layers;
}

KRoadLayers load_layers(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open layers file " + path);
  return read_layers(in, path);
}

}  // namespace polaris
