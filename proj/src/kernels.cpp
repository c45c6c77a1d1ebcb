#include "polaris/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>

namespace polaris {

namespace {

std::atomic<int> g_threads{0};

int active_threads() {
  int t = g_threads.load(std::memory_order_relaxed);
  return t > 0 ? t : omp_get_max_threads();
}

// Below this many edges the fork/join costs more than the multiply.
constexpr std::size_t kScaleParallelThreshold = 1 << 14;

}  // namespace

void set_thread_count(int threads) { g_threads.store(threads < 0 ? 0 : threads); }

int thread_count() { return active_threads(); }

void scale_weights_serial(WeightMap& w, std::span<const double> penalty) {
  for (std::size_t e = 0; e < w.size(); ++e) w[e] *= 1.0 + penalty[e];
}

void scale_weights(WeightMap& w, std::span<const double> penalty) {
  const auto n = static_cast<std::ptrdiff_t>(w.size());
  double* data = w.data();
  const double* k = penalty.data();
#pragma omp parallel for simd num_threads(active_threads()) \
    if (w.size() >= kScaleParallelThreshold) schedule(static)
  for (std::ptrdiff_t e = 0; e < n; ++e) data[e] *= 1.0 + k[e];
}

void rescale_if_large(WeightMap& w) {
  constexpr double kLimit = 0x1p600;
  constexpr double kShrink = 0x1p-600;
  double max = 0.0;
  for (double x : w) max = std::max(max, x);
  if (max <= kLimit) return;
  for (double& x : w) x *= kShrink;
}

std::vector<std::optional<Route>> route_batch_serial(const RoadNetwork& net,
                                                     const WeightMap& w,
                                                     std::span<const ODPair> pairs) {
  std::vector<std::optional<Route>> out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out[i] = shortest_path(net, w, pairs[i].origin, pairs[i].destination);
  }
  return out;
}

std::vector<std::optional<Route>> route_batch(const RoadNetwork& net, const WeightMap& w,
                                              std::span<const ODPair> pairs) {
  std::vector<std::optional<Route>> out(pairs.size());
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for num_threads(active_threads()) schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = shortest_path(net, w, pairs[i].origin, pairs[i].destination);
  }
  return out;
}

namespace detail {

void run_parallel(std::size_t n, void (*body)(std::size_t, void*), void* ctx) {
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for num_threads(active_threads()) schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i), ctx);
}

}  // namespace detail

}  // namespace polaris
