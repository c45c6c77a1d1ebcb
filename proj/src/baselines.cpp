#include "polaris/baselines.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

#include "polaris/errors.hpp"
#include "polaris/evaluation.hpp"
#include "polaris/kernels.hpp"

namespace polaris {

namespace {

void check_request(NodeId o, NodeId d, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (o == d) throw std::invalid_argument("origin equals destination");
}

[[noreturn]] void cap_exceeded(const char* algo, RouteSet& set, std::size_t k,
                               std::size_t cap) {
  auto message = fmt::format("{}: found {} of {} distinct routes within {} iterations", algo,
                             set.size(), k, cap);
  throw IterationCapExceeded(std::move(message), std::move(set.routes));
}

// Routes under `working` and records the route with its free-flow cost.
Route route_and_cost(const RoadNetwork& net, const WeightMap& working,
                     const WeightMap& base, NodeId o, NodeId d) {
  Route r = require_path(net, working, o, d);
  r.cost = route_cost(r, base);
  return r;
}

double perturbed(double current, double base, double delta, double z) {
  return std::max(kRandomizedWeightFloor * base, current + z * current * delta);
}

}  // namespace

Route fastest(const RoadNetwork& net, const WeightMap& w, NodeId o, NodeId d) {
  return require_path(net, w, o, d);
}

RouteSet path_penalization(const RoadNetwork& net, const WeightMap& w, NodeId o, NodeId d,
                           std::size_t k, double p, std::optional<std::size_t> cap) {
  check_request(o, d, k);
  if (!(p > 0.0)) throw std::invalid_argument("path penalization needs p > 0");
  const std::size_t limit = cap.value_or(10 * k);
  WeightMap working = w;
  RouteSet set;
  for (std::size_t i = 0; set.size() < k; ++i) {
    if (i >= limit) cap_exceeded("PP", set, k, limit);
    Route r = route_and_cost(net, working, w, o, d);
    for (EdgeId e : r.edges) working[e] *= 1.0 + p;
    rescale_if_large(working);
    set.insert(std::move(r), i);
  }
  return set;
}

RouteSet graph_randomization(const RoadNetwork& net, const WeightMap& w, NodeId o,
                             NodeId d, std::size_t k, double delta, std::uint64_t seed,
                             std::optional<std::size_t> cap) {
  check_request(o, d, k);
  if (!(delta > 0.0)) throw std::invalid_argument("graph randomization needs delta > 0");
  const std::size_t limit = cap.value_or(50 * k);
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  WeightMap working(w.size());
  RouteSet set;
  for (std::size_t i = 0; set.size() < k; ++i) {
    if (i >= limit) cap_exceeded("GR", set, k, limit);
    for (std::size_t e = 0; e < w.size(); ++e) {
      working[e] = perturbed(w[e], w[e], delta, normal(rng));
    }
    set.insert(route_and_cost(net, working, w, o, d), i);
  }
  return set;
}

RouteSet path_randomization(const RoadNetwork& net, const WeightMap& w, NodeId o,
                            NodeId d, std::size_t k, double delta, std::uint64_t seed,
                            std::optional<std::size_t> cap) {
  check_request(o, d, k);
  if (!(delta > 0.0)) throw std::invalid_argument("path randomization needs delta > 0");
  const std::size_t limit = cap.value_or(50 * k);
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  WeightMap working = w;
  RouteSet set;
  for (std::size_t i = 0; set.size() < k; ++i) {
    if (i >= limit) cap_exceeded("PR", set, k, limit);
    Route r = route_and_cost(net, working, w, o, d);
    for (EdgeId e : r.edges) working[e] = perturbed(working[e], w[e], delta, normal(rng));
    set.insert(std::move(r), i);
  }
  return set;
}

RouteSet kmd(const RoadNetwork& net, const WeightMap& w, NodeId o, NodeId d, std::size_t k,
             double epsilon, const KmdOptions& options) {
  check_request(o, d, k);
  if (!(epsilon > 0.0)) throw std::invalid_argument("KMD needs epsilon > 0");

  const Route best = route_and_cost(net, w, w, o, d);
  const double bound = (1.0 + epsilon) * best.cost;

  // Candidate pool: penalization sweeps from gentle to aggressive.
  constexpr std::array<double, 6> kSweepPenalties{0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
  constexpr int kMaxInfeasibleStreak = 3;
  RouteSet pool;
  pool.insert(best, 0);
  std::size_t spent = 1;
  const std::size_t per_sweep =
      std::max<std::size_t>(2, options.candidate_budget / kSweepPenalties.size());
  for (double p : kSweepPenalties) {
    WeightMap working = w;
    int infeasible = 0;
    for (std::size_t i = 0; i < per_sweep && spent < options.candidate_budget; ++i, ++spent) {
      Route r = route_and_cost(net, working, w, o, d);
      for (EdgeId e : r.edges) working[e] *= 1.0 + p;
      if (r.cost <= bound) {
        infeasible = 0;
        pool.insert(std::move(r), spent);
      } else if (++infeasible >= kMaxInfeasibleStreak) {
        break;
      }
    }
  }

  // Greedy max-min Jaccard distance selection seeded with the fastest route.
  RouteSet chosen;
  std::vector<char> taken(pool.size(), 0);
  chosen.insert(pool.routes[0], pool.iteration[0]);
  taken[0] = 1;
  while (chosen.size() < k && chosen.size() < pool.size()) {
    std::size_t pick = pool.size();
    double pick_score = -1.0;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (taken[c]) continue;
      double score = 1.0;
      for (const auto& s : chosen.routes) {
        score = std::min(score, 1.0 - route_overlap(pool.routes[c], s));
      }
      if (score > pick_score ||
          (score == pick_score && pool.routes[c].cost < pool.routes[pick].cost)) {
        pick = c;
        pick_score = score;
      }
    }
    taken[pick] = 1;
    chosen.insert(pool.routes[pick], pool.iteration[pick]);
  }
  if (chosen.size() < k) {
    auto message = fmt::format("KMD: only {} route(s) within (1 + {}) x fastest cost, {} requested",
                               chosen.size(), epsilon, k);
    throw InsufficientCandidates(std::move(message), std::move(chosen.routes));
  }
  return chosen;
}

}  // namespace polaris
