#pragma once

#include <cstddef>
#include <vector>

#include "polaris/pathfinding.hpp"

namespace polaris {

/// Distinct alternatives in discovery order. Each route's `cost` is its
/// free-flow travel time so sets from different algorithms compare directly.
struct RouteSet {
  std::vector<Route> routes;
  std::vector<std::size_t> iteration;  // loop index that discovered routes[i]

  std::size_t size() const noexcept { return routes.size(); }
  bool contains(const Route& r) const;
  /// Adds `r` unless an identical edge sequence is already present.
  bool insert(Route r, std::size_t at_iteration);
};

inline bool RouteSet::contains(const Route& r) const {
  for (const auto& x : routes) {
    if (x.same_path(r)) return true;
  }
  return false;
}

inline bool RouteSet::insert(Route r, std::size_t at_iteration) {
  if (contains(r)) return false;
  routes.push_back(std::move(r));
  iteration.push_back(at_iteration);
  return true;
}

}  // namespace polaris
