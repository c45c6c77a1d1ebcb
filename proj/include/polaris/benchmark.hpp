#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polaris/demand.hpp"
#include "polaris/evaluation.hpp"
#include "polaris/kroad.hpp"
#include "polaris/polaris.hpp"

namespace polaris {

enum class Algorithm { Fast, PathPenalization, GraphRandomization, PathRandomization, Kmd, Polaris };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// One algorithm with its parameters. Defaults follow the best values
/// reported for the larger cities (p = .1, delta = .2, epsilon = .1).
struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::Fast;
  double p = 0.1;
  double delta = 0.2;
  double epsilon = 0.1;
  std::size_t kmd_budget = 64;
  std::optional<std::size_t> iteration_cap;
  bool polaris_reset = false;

  /// Name plus the parameters that matter for it, e.g. "pp(p=0.1)".
  std::string label() const;
};

/// Alternatives for one OD pair; `seed` drives the randomized algorithms.
RouteSet alternatives(const AlgorithmSpec& spec, const RoadNetwork& net,
                      const WeightMap& free_flow, const KRoadLayers* layers, NodeId o,
                      NodeId d, std::size_t k, std::uint64_t seed);

/// Alternatives for a trip between two edges: routes run from the trip's
/// first edge to its last, with the node-to-node part computed between the
/// head of the first edge and the tail of the last. When those coincide the
/// single two-edge route is returned. Throws like alternatives(); partial
/// routes carried by the exception are already embedded.
std::vector<Route> trip_alternatives(const AlgorithmSpec& spec, const RoadNetwork& net,
                                     const WeightMap& free_flow, const KRoadLayers* layers,
                                     const TripRequest& trip, std::size_t k,
                                     std::uint64_t seed);

enum class PickRule { First, Uniform };

struct BenchmarkConfig {
  std::vector<AlgorithmSpec> algorithms;
  std::size_t k = 3;
  std::size_t trips = 2000;
  std::size_t runs = 5;
  std::uint64_t seed = 0;
  PickRule pick = PickRule::Uniform;
  PopularityCounting counting = PopularityCounting::Traversals;
  double cell_size = 1000.0;
  std::optional<EmissionCoeffs> coefficients;
  KinematicProfile profile;
};

struct Stat {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 for a single run
};

/// Aggregated measures for one algorithm over all runs.
struct ReportRow {
  std::string label;
  Stat high_popular_pct;
  Stat regulated_pct;
  std::optional<Stat> co2_grams;
  Stat mean_route_cost;   // free-flow seconds of the assigned routes
  Stat mean_overlap;      // mean pairwise Jaccard among each trip's alternatives
  std::size_t incomplete_trips = 0;  // fewer than k alternatives (summed over runs)
  std::size_t failed_trips = 0;      // no route at all (summed over runs)
};

struct EvaluationReport {
  std::uint64_t seed = 0;
  std::size_t runs = 0;
  std::size_t trips = 0;
  std::size_t k = 0;
  std::string pick;
  std::string counting;
  std::size_t layers_m = 0;
  std::size_t layers_v = 0;
  std::uint64_t layers_seed = 0;
  std::vector<ReportRow> rows;
};

/// Receives the assigned route of every trip, in (run, algorithm, trip) order.
using RouteSink = std::function<void(std::size_t run, const std::string& label,
                                     std::size_t trip_id, const Route& route)>;

/// Per run: sample demand, route every trip with every algorithm (each trip
/// is assigned one of its alternatives per the pick rule), compute the
/// measures, then aggregate mean and standard deviation across runs. Popularity
/// classes come from layer 0 of `layers`. Trips whose edges already meet get
/// the two-edge route and no alternatives.
EvaluationReport run_benchmark(const RoadNetwork& net, const KRoadLayers& layers,
                               const ODMatrix& matrix, const BenchmarkConfig& config,
                               const RouteSink& sink = {});

/// One POLARIS row per swept value of m or v.
struct SweepPoint {
  std::size_t value = 0;
  ReportRow row;
};

struct SweepReport {
  std::string parameter;  // "m" or "v"
  EvaluationReport base;  // metadata; rows left empty
  std::vector<SweepPoint> points;
  /// True when High-edge % never increases as the parameter grows.
  bool high_popular_monotone_nonincreasing = false;
};

/// Layers for each m are prefixes of `layers` (requires layers.m() >= max m).
SweepReport sweep_layers_m(const RoadNetwork& net, const KRoadLayers& layers,
                           const ODMatrix& matrix, const BenchmarkConfig& config,
                           const AlgorithmSpec& polaris_spec,
                           const std::vector<std::size_t>& ms);

/// Recomputes layers for each v with `m`; popularity classes stay those of
/// `reference` so the measure is comparable across points.
SweepReport sweep_layers_v(const RoadNetwork& net, const KRoadLayers& reference,
                           const ODMatrix& matrix, const BenchmarkConfig& config,
                           const AlgorithmSpec& polaris_spec,
                           const std::vector<std::size_t>& vs, std::size_t m,
                           const KRoadOptions& layer_options = {});

void write_report_json(const EvaluationReport& report, std::ostream& out);
void write_report_table(const EvaluationReport& report, std::ostream& out);
void write_sweep_json(const SweepReport& sweep, std::ostream& out);
void write_sweep_table(const SweepReport& sweep, std::ostream& out);

}  // namespace polaris
