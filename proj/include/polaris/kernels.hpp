#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a serial reference with
// the same contract; tests pin them against each other and bench/ times them.
// Results never depend on the thread count: every kernel writes to
// index-addressed slots and any reduction happens afterwards in index order.

#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <vector>

#include "polaris/pathfinding.hpp"

namespace polaris {

/// Worker cap for the OpenMP kernels; 0 restores the runtime default.
void set_thread_count(int threads);
/// Workers the kernels will use: the cap if set, else the runtime default.
int thread_count();

/// w[e] *= 1 + penalty[e] for every edge.
void scale_weights_serial(WeightMap& w, std::span<const double> penalty);
void scale_weights(WeightMap& w, std::span<const double> penalty);

/// Compounding penalties grow weights geometrically. Shortest paths are
/// invariant under a uniform power-of-two rescale (exact in binary floating
/// point), so once the largest weight passes 2^600 everything is scaled down.
void rescale_if_large(WeightMap& w);

/// Shortest path for each pair under a shared read-only WeightMap.
std::vector<std::optional<Route>> route_batch_serial(const RoadNetwork& net,
                                                     const WeightMap& w,
                                                     std::span<const ODPair> pairs);
std::vector<std::optional<Route>> route_batch(const RoadNetwork& net, const WeightMap& w,
                                              std::span<const ODPair> pairs);

namespace detail {
void run_parallel(std::size_t n, void (*body)(std::size_t, void*), void* ctx);
}

/// Calls fn(i) for i in [0, n) across workers with dynamic scheduling. If any
/// call throws, the exception from the lowest index is rethrown after the
/// loop finishes.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  struct Ctx {
    Fn* fn;
    std::vector<std::exception_ptr>* errors;
  } ctx{&fn, &errors};
  detail::run_parallel(
      n,
      [](std::size_t i, void* raw) {
        auto* c = static_cast<Ctx*>(raw);
        try {
          (*c->fn)(i);
        } catch (...) {
          (*c->errors)[i] = std::current_exception();
        }
      },
      &ctx);
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace polaris
