#include "polaris/benchmark.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polaris/baselines.hpp"
#include "polaris/errors.hpp"
#include "polaris/kernels.hpp"
#include "polaris/rng.hpp"

namespace polaris {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Fast: return "fast";
    case Algorithm::PathPenalization: return "pp";
    case Algorithm::GraphRandomization: return "gr";
    case Algorithm::PathRandomization: return "pr";
    case Algorithm::Kmd: return "kmd";
    case Algorithm::Polaris: return "polaris";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::Fast, Algorithm::PathPenalization, Algorithm::GraphRandomization,
                 Algorithm::PathRandomization, Algorithm::Kmd, Algorithm::Polaris}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

std::string AlgorithmSpec::label() const {
  switch (algorithm) {
    case Algorithm::PathPenalization: return fmt::format("pp(p={})", p);
    case Algorithm::GraphRandomization: return fmt::format("gr(delta={})", delta);
    case Algorithm::PathRandomization: return fmt::format("pr(delta={})", delta);
    case Algorithm::Kmd: return fmt::format("kmd(eps={})", epsilon);
    case Algorithm::Polaris: return polaris_reset ? "polaris(reset)" : "polaris";
    case Algorithm::Fast: break;
  }
  return "fast";
}

RouteSet alternatives(const AlgorithmSpec& spec, const RoadNetwork& net,
                      const WeightMap& free_flow, const KRoadLayers* layers, NodeId o,
                      NodeId d, std::size_t k, std::uint64_t seed) {
  switch (spec.algorithm) {
    case Algorithm::Fast: {
      RouteSet set;
      set.insert(fastest(net, free_flow, o, d), 0);
      return set;
    }
    case Algorithm::PathPenalization:
      return path_penalization(net, free_flow, o, d, k, spec.p, spec.iteration_cap);
    case Algorithm::GraphRandomization:
      return graph_randomization(net, free_flow, o, d, k, spec.delta, seed, spec.iteration_cap);
    case Algorithm::PathRandomization:
      return path_randomization(net, free_flow, o, d, k, spec.delta, seed, spec.iteration_cap);
    case Algorithm::Kmd:
      return kmd(net, free_flow, o, d, k, spec.epsilon, KmdOptions{spec.kmd_budget});
    case Algorithm::Polaris: {
      if (!layers) throw std::invalid_argument("polaris needs K_road layers");
      PolarisOptions options;
      options.iteration_cap = spec.iteration_cap;
      options.reset_layer_each_iteration = spec.polaris_reset;
      return polaris_routes(net, *layers, {o, d, k}, options);
    }
  }
  throw std::invalid_argument("unknown algorithm");
}

namespace {

constexpr std::uint64_t kPickStream = 0x7069636bULL;

struct RunMeasures {
  double high = 0.0;
  double regulated = 0.0;
  double co2_grams = 0.0;
  double mean_cost = 0.0;
  double mean_overlap = 0.0;
  std::size_t incomplete = 0;
  std::size_t failed = 0;
};

Stat aggregate(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

// Wraps a node-to-node route with the trip's first and last edge.
Route embed(const RoadNetwork& net, const TripRequest& trip, const Route& inner,
            const WeightMap& free_flow) {
  Route r;
  r.origin = net.edge(trip.origin_edge).from;
  r.destination = net.edge(trip.destination_edge).to;
  r.edges.reserve(inner.edges.size() + 2);
  r.edges.push_back(trip.origin_edge);
  r.edges.insert(r.edges.end(), inner.edges.begin(), inner.edges.end());
  r.edges.push_back(trip.destination_edge);
  r.cost = route_cost(r, free_flow);
  return r;
}

struct TripOutcome {
  std::vector<Route> alternatives;  // embedded
  std::optional<std::size_t> picked;
  bool incomplete = false;
};

TripOutcome route_trip(const AlgorithmSpec& spec, const RoadNetwork& net,
                       const WeightMap& free_flow, const KRoadLayers& layers,
                       const TripRequest& trip, const BenchmarkConfig& config,
                       std::uint64_t trip_seed) {
  TripOutcome out;
  try {
    out.alternatives =
        trip_alternatives(spec, net, free_flow, &layers, trip, config.k, trip_seed);
  } catch (const IncompleteRouteSet& e) {
    out.alternatives = e.partial();
    out.incomplete = true;
  } catch (const NotFound&) {
    return out;
  }
  if (out.alternatives.empty()) return out;
  if (config.pick == PickRule::First || out.alternatives.size() == 1) {
    out.picked = 0;
  } else {
    Rng rng(derive_seed(trip_seed, {kPickStream}));
    std::uniform_int_distribution<std::size_t> pick(0, out.alternatives.size() - 1);
    out.picked = pick(rng);
  }
  return out;
}

EvaluationReport run_with_classes(const RoadNetwork& net, const KRoadLayers& layers,
                                  const std::vector<PopularityClass>& classes,
                                  const ODMatrix& matrix, const BenchmarkConfig& config,
                                  const RouteSink& sink) {
  if (config.runs < 1) throw std::invalid_argument("benchmark needs at least one run");
  if (config.k < 1) throw std::invalid_argument("k must be >= 1");
  const Zoning zoning = build_tiling(net, config.cell_size);
  const WeightMap free_flow = free_flow_weights(net);

  EvaluationReport report;
  report.seed = config.seed;
  report.runs = config.runs;
  report.trips = config.trips;
  report.k = config.k;
  report.pick = config.pick == PickRule::First ? "first" : "uniform";
  report.counting =
      config.counting == PopularityCounting::Traversals ? "traversals" : "unique-edges";
  report.layers_m = layers.m();
  report.layers_v = layers.v;
  report.layers_seed = layers.seed;

  const std::size_t algos = config.algorithms.size();
  std::vector<std::vector<RunMeasures>> measures(algos);

  for (std::size_t run = 0; run < config.runs; ++run) {
    const std::uint64_t run_seed = derive_seed(config.seed, {run});
    const Demand demand = sample_demand(matrix, zoning, net, config.trips, run_seed);
    for (std::size_t a = 0; a < algos; ++a) {
      const auto& spec = config.algorithms[a];
      std::vector<TripOutcome> outcomes(demand.trips.size());
      parallel_for(demand.trips.size(), [&](std::size_t t) {
        const auto& trip = demand.trips[t];
        outcomes[t] = route_trip(spec, net, free_flow, layers, trip, config,
                                 derive_seed(run_seed, {trip.id}));
      });

      RunMeasures m;
      std::vector<Route> assigned;
      assigned.reserve(outcomes.size());
      double overlap_sum = 0.0;
      std::size_t overlap_trips = 0;
      const std::string label = spec.label();
      for (std::size_t t = 0; t < outcomes.size(); ++t) {
        auto& out = outcomes[t];
        if (out.incomplete) ++m.incomplete;
        if (!out.picked) {
          ++m.failed;
          continue;
        }
        if (out.alternatives.size() >= 2) {
          overlap_sum += mean_pairwise_overlap(out.alternatives);
          ++overlap_trips;
        }
        assigned.push_back(std::move(out.alternatives[*out.picked]));
        if (sink) sink(run, label, demand.trips[t].id, assigned.back());
      }
      m.high = highly_popular_fraction(assigned, classes, config.counting);
      m.regulated = regulated_fraction(assigned, net).percent();
      if (config.coefficients) {
        m.co2_grams = total_emissions(assigned, net, *config.coefficients, config.profile) / 1000.0;
      }
      double cost_sum = 0.0;
      for (const auto& r : assigned) cost_sum += r.cost;
      m.mean_cost = assigned.empty() ? 0.0 : cost_sum / static_cast<double>(assigned.size());
      m.mean_overlap = overlap_trips == 0 ? 0.0 : overlap_sum / static_cast<double>(overlap_trips);
      measures[a].push_back(m);
    }
  }

  for (std::size_t a = 0; a < algos; ++a) {
    ReportRow row;
    row.label = config.algorithms[a].label();
    auto column = [&](auto field) {
      std::vector<double> xs;
      for (const auto& m : measures[a]) xs.push_back(field(m));
      return aggregate(xs);
    };
    row.high_popular_pct = column([](const RunMeasures& m) { return m.high; });
    row.regulated_pct = column([](const RunMeasures& m) { return m.regulated; });
    if (config.coefficients) row.co2_grams = column([](const RunMeasures& m) { return m.co2_grams; });
    row.mean_route_cost = column([](const RunMeasures& m) { return m.mean_cost; });
    row.mean_overlap = column([](const RunMeasures& m) { return m.mean_overlap; });
    for (const auto& m : measures[a]) {
      row.incomplete_trips += m.incomplete;
      row.failed_trips += m.failed;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

bool nonincreasing(const std::vector<SweepPoint>& points) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].row.high_popular_pct.mean > points[i - 1].row.high_popular_pct.mean) {
      return false;
    }
  }
  return true;
}

nlohmann::ordered_json stat_json(const Stat& s) {
  return nlohmann::ordered_json{{"mean", s.mean}, {"sd", s.sd}};
}

nlohmann::ordered_json row_json(const ReportRow& r) {
  nlohmann::ordered_json j;
  j["algorithm"] = r.label;
  j["highly_popular_edges_pct"] = stat_json(r.high_popular_pct);
  j["regulated_intersections_pct"] = stat_json(r.regulated_pct);
  j["total_co2_g"] = r.co2_grams ? stat_json(*r.co2_grams) : nlohmann::ordered_json(nullptr);
  j["mean_route_cost_s"] = stat_json(r.mean_route_cost);
  j["mean_pairwise_overlap"] = stat_json(r.mean_overlap);
  j["incomplete_trips"] = r.incomplete_trips;
  j["failed_trips"] = r.failed_trips;
  return j;
}

nlohmann::ordered_json header_json(const EvaluationReport& r) {
  nlohmann::ordered_json j;
  j["seed"] = r.seed;
  j["runs"] = r.runs;
  j["trips"] = r.trips;
  j["k"] = r.k;
  j["pick"] = r.pick;
  j["popularity_counting"] = r.counting;
  j["layers"] = {{"m", r.layers_m}, {"v", r.layers_v}, {"seed", r.layers_seed}};
  return j;
}

std::string cell(const Stat& s, bool with_sd) {
  return with_sd ? fmt::format("{:.2f} ({:.2f})", s.mean, s.sd) : fmt::format("{:.2f}", s.mean);
}

}  // namespace

std::vector<Route> trip_alternatives(const AlgorithmSpec& spec, const RoadNetwork& net,
                                     const WeightMap& free_flow, const KRoadLayers* layers,
                                     const TripRequest& trip, std::size_t k,
                                     std::uint64_t seed) {
  const NodeId o = net.edge(trip.origin_edge).to;
  const NodeId d = net.edge(trip.destination_edge).from;
  std::vector<Route> out;
  if (o == d) {
    Route direct;
    direct.origin = direct.destination = o;
    out.push_back(embed(net, trip, direct, free_flow));
    return out;
  }
  auto embed_all = [&](const std::vector<Route>& routes) {
    std::vector<Route> embedded;
    for (const auto& r : routes) embedded.push_back(embed(net, trip, r, free_flow));
    return embedded;
  };
  try {
    return embed_all(alternatives(spec, net, free_flow, layers, o, d, k, seed).routes);
  } catch (const IterationCapExceeded& e) {
    throw IterationCapExceeded(e.what(), embed_all(e.partial()));
  } catch (const InsufficientCandidates& e) {
    throw InsufficientCandidates(e.what(), embed_all(e.partial()));
  }
}

EvaluationReport run_benchmark(const RoadNetwork& net, const KRoadLayers& layers,
                               const ODMatrix& matrix, const BenchmarkConfig& config,
                               const RouteSink& sink) {
  const auto classes = classify_popularity(layers.layer(0));
  return run_with_classes(net, layers, classes, matrix, config, sink);
}

SweepReport sweep_layers_m(const RoadNetwork& net, const KRoadLayers& layers,
                           const ODMatrix& matrix, const BenchmarkConfig& config,
                           const AlgorithmSpec& polaris_spec,
                           const std::vector<std::size_t>& ms) {
  const auto classes = classify_popularity(layers.layer(0));
  BenchmarkConfig cfg = config;
  cfg.algorithms = {polaris_spec};
  SweepReport sweep;
  sweep.parameter = "m";
  for (std::size_t m : ms) {
    if (m < 1 || m > layers.m()) {
      throw std::invalid_argument(
          fmt::format("sweep value m={} outside the {} available layers", m, layers.m()));
    }
    auto report = run_with_classes(net, layers.truncated(m), classes, matrix, cfg, {});
    if (sweep.points.empty()) {
      sweep.base = report;
      sweep.base.rows.clear();
      sweep.base.layers_m = layers.m();
    }
    sweep.points.push_back({m, report.rows.front()});
  }
  sweep.high_popular_monotone_nonincreasing = nonincreasing(sweep.points);
  return sweep;
}

SweepReport sweep_layers_v(const RoadNetwork& net, const KRoadLayers& reference,
                           const ODMatrix& matrix, const BenchmarkConfig& config,
                           const AlgorithmSpec& polaris_spec,
                           const std::vector<std::size_t>& vs, std::size_t m,
                           const KRoadOptions& layer_options) {
  const auto classes = classify_popularity(reference.layer(0));
  BenchmarkConfig cfg = config;
  cfg.algorithms = {polaris_spec};
  SweepReport sweep;
  sweep.parameter = "v";
  for (std::size_t v : vs) {
    auto layers = compute_kroad_layers(net, v, m, reference.seed, layer_options);
    auto report = run_with_classes(net, layers, classes, matrix, cfg, {});
    if (sweep.points.empty()) {
      sweep.base = report;
      sweep.base.rows.clear();
      sweep.base.layers_v = reference.v;
    }
    sweep.points.push_back({v, report.rows.front()});
  }
  sweep.high_popular_monotone_nonincreasing = nonincreasing(sweep.points);
  return sweep;
}

void write_report_json(const EvaluationReport& report, std::ostream& out) {
  nlohmann::ordered_json j = header_json(report);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) j["rows"].push_back(row_json(r));
  out << j.dump(2) << '\n';
}

void write_report_table(const EvaluationReport& report, std::ostream& out) {
  const bool sd = report.runs > 1;
  fmt::print(out, "# seed={} runs={} trips={} k={} pick={} layers(m={}, v={})\n", report.seed,
             report.runs, report.trips, report.k, report.pick, report.layers_m, report.layers_v);
  fmt::print(out, "{:<18} {:>22} {:>22} {:>26}\n", "algorithm", "High popular edges %",
             "Total CO2 (g)", "Regulated intersections %");
  for (const auto& r : report.rows) {
    fmt::print(out, "{:<18} {:>22} {:>22} {:>26}\n", r.label, cell(r.high_popular_pct, sd),
               r.co2_grams ? cell(*r.co2_grams, sd) : std::string("n/a"),
               cell(r.regulated_pct, sd));
  }
}

void write_sweep_json(const SweepReport& sweep, std::ostream& out) {
  nlohmann::ordered_json j = header_json(sweep.base);
  j["sweep"] = sweep.parameter;
  j["high_popular_monotone_nonincreasing"] = sweep.high_popular_monotone_nonincreasing;
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : sweep.points) {
    auto row = row_json(p.row);
    row[sweep.parameter] = p.value;
    j["points"].push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

void write_sweep_table(const SweepReport& sweep, std::ostream& out) {
  const bool sd = sweep.base.runs > 1;
  fmt::print(out, "# sweep over {} (seed={} runs={} trips={} k={})\n", sweep.parameter,
             sweep.base.seed, sweep.base.runs, sweep.base.trips, sweep.base.k);
  fmt::print(out, "{:>8} {:>22} {:>22} {:>26}\n", sweep.parameter, "High popular edges %",
             "Total CO2 (g)", "Regulated intersections %");
  for (const auto& p : sweep.points) {
    fmt::print(out, "{:>8} {:>22} {:>22} {:>26}\n", p.value, cell(p.row.high_popular_pct, sd),
               p.row.co2_grams ? cell(*p.row.co2_grams, sd) : std::string("n/a"),
               cell(p.row.regulated_pct, sd));
  }
  fmt::print(out, "# High popular edges % non-increasing in {}: {}\n", sweep.parameter,
             sweep.high_popular_monotone_nonincreasing ? "yes" : "no");
}

}  // namespace polaris
