#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "polaris/pathfinding.hpp"
#include "polaris/zoning.hpp"

namespace polaris {

/// Share of an edge's flow that its major driver zones must jointly cover.
inline constexpr int kDriverShareNumerator = 4;    // 80% = 4/5
inline constexpr int kDriverShareDenominator = 5;

/// K_road per edge: the number of origin zones in the smallest
/// descending-flow prefix covering >= 80% of the traversals of that edge.
/// Zones with equal flow are ordered by ZoneId. Untraversed edges get 0.
std::vector<std::uint32_t> compute_kroad(std::span<const Route> routes,
                                         const Zoning& zoning, std::size_t edge_count);

/// x -> (x - min) / (max - min); a constant input maps to all zeros.
std::vector<double> min_max_normalize(std::span<const double> values);

/// m normalized popularity layers, stored layer-major.
struct KRoadLayers {
  std::size_t v = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> layers;

  std::size_t m() const noexcept { return layers.size(); }
  std::size_t edge_count() const noexcept { return layers.empty() ? 0 : layers[0].size(); }
  const std::vector<double>& layer(std::size_t l) const { return layers[l]; }

  /// First `m` layers; identical to recomputing with the smaller m.
  KRoadLayers truncated(std::size_t m) const;

  bool operator==(const KRoadLayers&) const = default;
};

struct KRoadOptions {
  double cell_size = 1000.0;
  /// Fresh OD pairs for each layer; false reuses the first layer's pairs.
  bool resample_per_layer = true;
  std::size_t max_sampling_attempts = 1000;
  /// Called after each layer's penalization with the working weights.
  std::function<void(std::size_t layer, const WeightMap& w)> on_layer_weights;
  /// Route the v pairs of a layer with the OpenMP kernel (else serial).
  bool parallel = true;
};

/// Builds the K_road layers: for each layer, sample v OD pairs, route them on
/// the current weights, normalize the per-edge K_road, then penalize every
/// edge by (1 + K_l[e]) before the next layer. Weights start at free flow.
KRoadLayers compute_kroad_layers(const RoadNetwork& net, std::size_t v, std::size_t m,
                                 std::uint64_t seed, const KRoadOptions& options = {});

enum class PopularityClass : std::uint8_t { Low = 0, Medium = 1, High = 2 };

std::string_view to_string(PopularityClass c);

/// Three classes from equal-width bins in log space between the smallest
/// positive value and the maximum. Bins are closed on the right, so a value
/// sitting on an inner bin edge takes the lower class. Zeros are Low.
/// Throws DegenerateDistribution with fewer than 2 distinct positive values.
std::vector<PopularityClass> classify_popularity(std::span<const double> layer0);

/// `KROAD m=<m> v=<v> seed=<seed>` then `<edge_id> <k_0> ... <k_{m-1}>`.
void write_layers(const KRoadLayers& layers, std::ostream& out);
void save_layers(const KRoadLayers& layers, const std::string& path);
KRoadLayers read_layers(std::istream& in, const std::string& source = "<stream>");
KRoadLayers load_layers(const std::string& path);

}  // namespace polaris
