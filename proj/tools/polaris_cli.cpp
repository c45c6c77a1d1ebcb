// polaris: command-line frontend for K_road layers, alternative routing,
// demand generation and desk-scale benchmarks.
//
// Exit codes: 0 success, 1 usage, 2 data/validation, 3 algorithmic failure.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "polaris/baselines.hpp"
#include "polaris/benchmark.hpp"
#include "polaris/demand.hpp"
#include "polaris/errors.hpp"
#include "polaris/kernels.hpp"
#include "polaris/kroad.hpp"
#include "polaris/polaris.hpp"
#include "polaris/roadnet.hpp"
#include "polaris/synthetic.hpp"

namespace {

using namespace polaris;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAlgorithm = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ParseError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

NodeId node_by_name(const RoadNetwork& net, const std::string& name) {
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    if (net.node(static_cast<NodeId>(i)).name == name) return static_cast<NodeId>(i);
  }
  throw UsageError("unknown node '" + name + "'");
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad list element '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

KRoadLayers require_layers(const std::string& path) {
  if (path.empty()) throw UsageError("this command needs --layers <file>");
  std::ifstream probe(path);
  if (!probe) throw ParseError("layers file not found: " + path);
  return load_layers(path);
}

// Options shared by `route` and `bench` to build algorithm specs.
struct AlgoFlags {
  double p = 0.1;
  double delta = 0.2;
  double epsilon = 0.1;
  std::size_t kmd_budget = 64;
  std::size_t cap = 0;
  bool reset_layers = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--p", p, "PP penalization factor")->check(CLI::PositiveNumber);
    cmd->add_option("--delta", delta, "GR/PR randomization spread")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", epsilon, "KMD cost slack")->check(CLI::PositiveNumber);
    cmd->add_option("--kmd-budget", kmd_budget, "KMD candidate shortest-path budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--cap", cap, "iteration cap (0 = algorithm default)");
    cmd->add_flag("--reset-layers", reset_layers,
                  "POLARIS: apply each layer to free-flow weights instead of compounding");
  }

  AlgorithmSpec spec(Algorithm a) const {
    AlgorithmSpec s;
    s.algorithm = a;
    s.p = p;
    s.delta = delta;
    s.epsilon = epsilon;
    s.kmd_budget = kmd_budget;
    if (cap > 0) s.iteration_cap = cap;
    s.polaris_reset = reset_layers;
    return s;
  }
};

Algorithm require_algorithm(const std::string& name) {
  auto a = parse_algorithm(name);
  if (!a) throw UsageError("unknown --algo '" + name + "' (fast, pp, gr, pr, kmd, polaris)");
  return *a;
}

bool stochastic(Algorithm a) {
  return a == Algorithm::GraphRandomization || a == Algorithm::PathRandomization;
}

void print_layer_stats(const KRoadLayers& layers) {
  for (std::size_t l = 0; l < layers.m(); ++l) {
    const auto& k = layers.layer(l);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (double x : k) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      sum += x;
    }
    fmt::print(std::cerr, "layer {}: min={:.4f} max={:.4f} mean={:.4f}\n", l, lo, hi,
               k.empty() ? 0.0 : sum / static_cast<double>(k.size()));
  }
}

void dump_route(std::ostream& out, std::size_t trip_id, const std::string& algo,
                const Route& r, const RoadNetwork& net) {
  std::string line = fmt::format("{} {}", trip_id, algo);
  for (EdgeId e : r.edges) {
    line += ' ';
    line += net.edge(e).name;
  }
  out << line << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Popularity-aware alternative routing toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  if (const char* env = std::getenv("POLARIS_THREADS")) threads = std::atoi(env);
  app.add_option("--threads", threads, "worker threads (default: $POLARIS_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  // grid
  auto* grid = app.add_subcommand("grid", "write a synthetic grid network");
  GridSpec grid_spec;
  std::string grid_out;
  grid->add_option("--rows", grid_spec.rows)->check(CLI::Range(2, 10000));
  grid->add_option("--cols", grid_spec.cols)->check(CLI::Range(2, 10000));
  grid->add_option("--spacing", grid_spec.spacing, "meters")->check(CLI::PositiveNumber);
  grid->add_option("--street-speed", grid_spec.street_speed, "m/s")->check(CLI::PositiveNumber);
  grid->add_option("--corridor-speed", grid_spec.corridor_speed, "m/s")->check(CLI::PositiveNumber);
  grid->add_option("--regulated-share", grid_spec.regulated_share)->check(CLI::Range(0.0, 1.0));
  grid->add_option("--seed", grid_spec.seed)->required();
  grid->add_option("--out", grid_out);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check a network file");
  std::string validate_net;
  validate_cmd->add_option("--net", validate_net)->required();

  // kroad
  auto* kroad = app.add_subcommand("kroad", "compute and save K_road layers");
  std::string kroad_net, kroad_out;
  std::size_t kroad_v = 0, kroad_m = 0;
  std::uint64_t kroad_seed = 0;
  double kroad_cell = 1000.0;
  bool kroad_reuse = false;
  kroad->add_option("--net", kroad_net)->required();
  kroad->add_option("--v", kroad_v, "OD pairs per layer")->required()->check(CLI::PositiveNumber);
  kroad->add_option("--m", kroad_m, "number of layers")->required()->check(CLI::PositiveNumber);
  kroad->add_option("--seed", kroad_seed)->required();
  kroad->add_option("--cell", kroad_cell, "tile size in meters")->check(CLI::PositiveNumber);
  kroad->add_flag("--reuse-pairs", kroad_reuse, "reuse the first layer's OD pairs in every layer");
  kroad->add_option("--out", kroad_out);

  // od
  auto* od = app.add_subcommand("od", "synthesize a hotspot OD matrix");
  std::string od_net, od_out, od_hotspots;
  std::uint64_t od_seed = 0;
  double od_cell = 1000.0;
  od->add_option("--net", od_net)->required();
  od->add_option("--hotspot", od_hotspots, "row:col[:weight[:sigma]];...")->required();
  od->add_option("--seed", od_seed)->required();
  od->add_option("--cell", od_cell)->check(CLI::PositiveNumber);
  od->add_option("--out", od_out);

  // demand
  auto* demand_cmd = app.add_subcommand("demand", "sample trips from an OD matrix");
  std::string demand_net, demand_od, demand_out;
  std::size_t demand_n = 0;
  std::uint64_t demand_seed = 0;
  double demand_cell = 1000.0;
  demand_cmd->add_option("--net", demand_net)->required();
  demand_cmd->add_option("--od", demand_od, "OD matrix file")->required();
  demand_cmd->add_option("--n", demand_n, "number of trips")->required()->check(CLI::PositiveNumber);
  demand_cmd->add_option("--seed", demand_seed)->required();
  demand_cmd->add_option("--cell", demand_cell)->check(CLI::PositiveNumber);
  demand_cmd->add_option("--out", demand_out);

  // route
  auto* route = app.add_subcommand("route", "alternative routes for a node pair or demand file");
  std::string route_net, route_algo = "polaris", route_pair, route_demand, route_layers, route_out;
  std::size_t route_k = 3;
  std::optional<std::uint64_t> route_seed;
  AlgoFlags route_flags;
  route->add_option("--net", route_net)->required();
  route->add_option("--algo", route_algo, "fast|pp|gr|pr|kmd|polaris");
  route->add_option("--k", route_k)->check(CLI::PositiveNumber);
  auto* pair_opt = route->add_option("--od", route_pair, "origin,destination node ids");
  auto* demand_opt = route->add_option("--demand", route_demand, "trip file");
  pair_opt->excludes(demand_opt);
  route->add_option("--layers", route_layers);
  route->add_option("--seed", route_seed);
  route->add_option("--out", route_out);
  route_flags.attach(route);

  // bench
  auto* bench = app.add_subcommand("bench", "desk-scale comparison of algorithms");
  std::string bench_net, bench_od, bench_hotspots, bench_layers, bench_algos =
      "fast,pp,gr,pr,kmd,polaris";
  std::string bench_json, bench_table, bench_routes, bench_sweep, bench_coeffs, bench_class;
  std::string bench_pick = "uniform", bench_counting = "traversals";
  std::size_t bench_k = 3, bench_n = 2000, bench_runs = 5, bench_v = 1000, bench_m = 3;
  std::optional<std::uint64_t> bench_seed;
  double bench_cell = 1000.0;
  AlgoFlags bench_flags;
  bench->add_option("--net", bench_net)->required();
  bench->add_option("--od", bench_od, "OD matrix file");
  bench->add_option("--hotspot", bench_hotspots, "synthesize the OD matrix from hotspots");
  bench->add_option("--layers", bench_layers, "K_road layers file (else computed from --v/--m)");
  bench->add_option("--algo", bench_algos, "comma-separated algorithms");
  bench->add_option("--k", bench_k)->check(CLI::PositiveNumber);
  bench->add_option("--n", bench_n, "trips per run")->check(CLI::PositiveNumber);
  bench->add_option("--runs", bench_runs)->check(CLI::PositiveNumber);
  bench->add_option("--v", bench_v)->check(CLI::PositiveNumber);
  bench->add_option("--m", bench_m)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed)->required();
  bench->add_option("--cell", bench_cell)->check(CLI::PositiveNumber);
  bench->add_option("--pick", bench_pick, "first|uniform")->check(CLI::IsMember({"first", "uniform"}));
  bench->add_option("--counting", bench_counting, "traversals|unique")
      ->check(CLI::IsMember({"traversals", "unique"}));
  bench->add_option("--coeffs", bench_coeffs, "CO2 coefficient file");
  bench->add_option("--vehicle-class", bench_class);
  bench->add_option("--sweep", bench_sweep, "m=1,2,3 or v=500,1000");
  bench->add_option("--json", bench_json, "write the JSON report here");
  bench->add_option("--out", bench_table, "write the text table here (default stdout)");
  bench->add_option("--routes", bench_routes, "write the per-trip route dump here");
  bench_flags.attach(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  set_thread_count(threads);

  try {
    if (*grid) {
      auto net = make_grid_network(grid_spec);
      Output out(grid_out);
      write_network(net, out.stream());
      return 0;
    }

    if (*validate_cmd) {
      std::ifstream in(validate_net);
      if (!in) throw ParseError("cannot open network file " + validate_net);
      auto report = validate(parse_network(in, validate_net));
      std::cout << (report.empty() ? "ok\n" : report.summary());
      return report.has_errors() ? kExitData : 0;
    }

    if (*kroad) {
      auto net = load_network(kroad_net);
      KRoadOptions options;
      options.cell_size = kroad_cell;
      options.resample_per_layer = !kroad_reuse;
      auto layers = compute_kroad_layers(net, kroad_v, kroad_m, kroad_seed, options);
      print_layer_stats(layers);
      Output out(kroad_out);
      write_layers(layers, out.stream());
      return 0;
    }

    if (*od) {
      auto net = load_network(od_net);
      auto matrix = synth_od_matrix(build_tiling(net, od_cell), parse_hotspots(od_hotspots), od_seed);
      Output out(od_out);
      write_od_matrix(matrix, out.stream());
      return 0;
    }

    if (*demand_cmd) {
      auto net = load_network(demand_net);
      auto demand = sample_demand(load_od_matrix(demand_od), build_tiling(net, demand_cell), net,
                                  demand_n, demand_seed);
      Output out(demand_out);
      write_demand(demand, net, out.stream());
      return 0;
    }

    if (*route) {
      const Algorithm algo = require_algorithm(route_algo);
      if (route_pair.empty() == route_demand.empty()) {
        throw UsageError("route needs exactly one of --od or --demand");
      }
      if (stochastic(algo) && !route_seed) throw UsageError("--seed is required for gr/pr");
      auto net = load_network(route_net);
      std::optional<KRoadLayers> layers;
      if (algo == Algorithm::Polaris) {
        layers = require_layers(route_layers);
      } else if (!route_layers.empty()) {
        layers = load_layers(route_layers);
      }
      std::optional<std::vector<PopularityClass>> classes;
      if (layers) {
        if (layers->edge_count() != net.edge_count()) {
          throw SchemaMismatch(fmt::format("{} covers {} edges, network has {}", route_layers,
                                           layers->edge_count(), net.edge_count()));
        }
        classes = classify_popularity(layers->layer(0));
      }
      const auto spec = route_flags.spec(algo);
      const auto free_flow = free_flow_weights(net);
      const std::uint64_t seed = route_seed.value_or(0);
      Output out(route_out);

      auto emit = [&](std::size_t trip_id, const std::vector<Route>& routes) {
        for (std::size_t i = 0; i < routes.size(); ++i) {
          const auto& r = routes[i];
          std::string high = "n/a";
          if (classes) {
            high = fmt::format("{:.2f}", highly_popular_fraction(std::span(&r, 1), *classes));
          }
          fmt::print(out.stream(), "# trip {} route {} cost_s={:.3f} high_pct={}\n", trip_id, i,
                     route_cost(r, free_flow), high);
          dump_route(out.stream(), trip_id, std::string(to_string(algo)), r, net);
        }
      };

      if (!route_pair.empty()) {
        auto comma = route_pair.find(',');
        if (comma == std::string::npos) throw UsageError("--od expects origin,destination");
        const NodeId o = node_by_name(net, route_pair.substr(0, comma));
        const NodeId d = node_by_name(net, route_pair.substr(comma + 1));
        if (o == d) throw UsageError("origin and destination must differ");
        auto set = alternatives(spec, net, free_flow, layers ? &*layers : nullptr, o, d, route_k, seed);
        emit(0, set.routes);
      } else {
        std::ifstream in(route_demand);
        if (!in) throw ParseError("cannot open demand file " + route_demand);
        auto demand = read_demand(in, net, route_demand);
        // One trip falling short must not drop the rest: partial sets are
        // written and flagged, and the shortfall is reported on stderr.
        std::size_t short_trips = 0;
        for (const auto& trip : demand.trips) {
          try {
            emit(trip.id, trip_alternatives(spec, net, free_flow, layers ? &*layers : nullptr,
                                            trip, route_k, derive_seed(seed, {trip.id})));
          } catch (const IncompleteRouteSet& e) {
            ++short_trips;
            fmt::print(out.stream(), "# trip {} incomplete: {}\n", trip.id, e.what());
            emit(trip.id, e.partial());
          } catch (const NotFound& e) {
            ++short_trips;
            fmt::print(out.stream(), "# trip {} failed: {}\n", trip.id, e.what());
          }
        }
        if (short_trips > 0) {
          fmt::print(stderr, "warning: {} of {} trips got fewer than {} routes\n", short_trips,
                     demand.trips.size(), route_k);
        }
      }
      return 0;
    }

    if (*bench) {
      auto net = load_network(bench_net);
      if (bench_od.empty() == bench_hotspots.empty()) {
        throw UsageError("bench needs exactly one of --od or --hotspot");
      }
      const ODMatrix matrix = bench_od.empty()
                                  ? synth_od_matrix(build_tiling(net, bench_cell),
                                                    parse_hotspots(bench_hotspots), *bench_seed)
                                  : load_od_matrix(bench_od);

      BenchmarkConfig config;
      config.k = bench_k;
      config.trips = bench_n;
      config.runs = bench_runs;
      config.seed = *bench_seed;
      config.pick = bench_pick == "first" ? PickRule::First : PickRule::Uniform;
      config.counting = bench_counting == "unique" ? PopularityCounting::UniqueEdges
                                                   : PopularityCounting::Traversals;
      config.cell_size = bench_cell;
      if (!bench_coeffs.empty()) {
        config.coefficients = select_coefficients(load_coefficients(bench_coeffs), bench_class);
      }

      std::string sweep_param;
      std::vector<std::size_t> sweep_values;
      if (!bench_sweep.empty()) {
        auto eq = bench_sweep.find('=');
        if (eq == std::string::npos) throw UsageError("--sweep expects m=... or v=...");
        sweep_param = bench_sweep.substr(0, eq);
        if (sweep_param != "m" && sweep_param != "v") throw UsageError("--sweep supports m or v");
        sweep_values = parse_list(bench_sweep.substr(eq + 1));
      }

      KRoadLayers layers;
      if (!bench_layers.empty()) {
        layers = require_layers(bench_layers);
      } else {
        std::size_t m = bench_m;
        if (sweep_param == "m") {
          for (auto v : sweep_values) m = std::max(m, v);
        }
        fmt::print(std::cerr, "computing K_road layers (v={}, m={}, seed={})\n", bench_v, m,
                   *bench_seed);
        KRoadOptions options;
        options.cell_size = bench_cell;
        layers = compute_kroad_layers(net, bench_v, m, *bench_seed, options);
      }
      if (layers.edge_count() != net.edge_count()) {
        throw SchemaMismatch(fmt::format("layers cover {} edges, network has {}",
                                         layers.edge_count(), net.edge_count()));
      }

      Output table(bench_table);
      if (!sweep_param.empty()) {
        const auto spec = bench_flags.spec(Algorithm::Polaris);
        SweepReport sweep;
        if (sweep_param == "m") {
          sweep = sweep_layers_m(net, layers, matrix, config, spec, sweep_values);
        } else {
          KRoadOptions options;
          options.cell_size = bench_cell;
          sweep = sweep_layers_v(net, layers, matrix, config, spec, sweep_values, bench_m, options);
        }
        write_sweep_table(sweep, table.stream());
        if (!bench_json.empty()) {
          Output json(bench_json);
          write_sweep_json(sweep, json.stream());
        }
        return 0;
      }

      std::stringstream algos(bench_algos);
      std::string name;
      while (std::getline(algos, name, ',')) {
        config.algorithms.push_back(bench_flags.spec(require_algorithm(name)));
      }
      std::unique_ptr<Output> routes;
      RouteSink sink;
      if (!bench_routes.empty()) {
        routes = std::make_unique<Output>(bench_routes);
        sink = [&](std::size_t run, const std::string& label, std::size_t trip, const Route& r) {
          if (run == 0) dump_route(routes->stream(), trip, label, r, net);
        };
      }
      auto report = run_benchmark(net, layers, matrix, config, sink);
      write_report_table(report, table.stream());
      if (!bench_json.empty()) {
        Output json(bench_json);
        write_report_json(report, json.stream());
      }
      return 0;
    }
  } catch (const UsageError& e) {
    fmt::print(std::cerr, "usage error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    fmt::print(std::cerr, "usage error: {}\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return e.kind() == ErrorKind::Data ? kExitData : kExitAlgorithm;
  }
  return kExitUsage;
}
