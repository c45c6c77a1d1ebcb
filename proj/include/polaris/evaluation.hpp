#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "polaris/kroad.hpp"

namespace polaris {

enum class PopularityCounting {
  Traversals,   // every edge traversal of every route counts
  UniqueEdges   // each distinct edge counts once across the route list
};

/// 100 * High-class edges / all edges, counted per `counting`. 0 for no edges.
double highly_popular_fraction(std::span<const Route> routes,
                               std::span<const PopularityClass> classes,
                               PopularityCounting counting = PopularityCounting::Traversals);

struct Fraction {
  std::size_t numerator = 0;
  std::size_t denominator = 0;
  bool empty() const noexcept { return denominator == 0; }
  /// Percentage; 0 when the denominator is empty.
  double percent() const noexcept {
    return denominator == 0 ? 0.0 : 100.0 * static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

/// Regulated interior intersections over all interior intersections of the
/// routes (route endpoints excluded). Single-edge routes add nothing.
Fraction regulated_fraction(std::span<const Route> routes, const RoadNetwork& net);

/// Jaccard index of the two routes' edge sets; two empty routes give 1.
double route_overlap(const Route& a, const Route& b);

/// Mean Jaccard index over all unordered pairs; 0 with fewer than two routes.
double mean_pairwise_overlap(std::span<const Route> routes);

/// Polynomial CO2 coefficients (mg/s) for one emission/vehicle class.
struct EmissionCoeffs {
  std::string vehicle_class;
  std::array<double, 6> c{};
};

/// `CO2 <class> c0 c1 c2 c3 c4 c5` lines.
std::vector<EmissionCoeffs> read_coefficients(std::istream& in,
                                              const std::string& source = "<stream>");
std::vector<EmissionCoeffs> load_coefficients(const std::string& path);
/// The class named `vehicle_class`, or the first one if the name is empty.
EmissionCoeffs select_coefficients(const std::vector<EmissionCoeffs>& all,
                                   const std::string& vehicle_class);

struct TrajectoryPoint {
  double time = 0.0;          // s since departure
  double speed = 0.0;         // m/s
  double acceleration = 0.0;  // m/s^2
  double interval = 0.0;      // seconds of travel this sample stands for
};

/// c0 + c1*s*a + c2*s*a^2 + c3*s + c4*s^2 + c5*s^3, unclamped.
double emission_polynomial(double speed, double acceleration, const EmissionCoeffs& c);

/// Instantaneous CO2 rate (mg/s); negative polynomial values clamp to 0.
double hbefa_co2(const TrajectoryPoint& pt, const EmissionCoeffs& c);

struct KinematicProfile {
  double max_accel = 2.0;        // m/s^2
  double max_decel = 2.0;        // m/s^2
  double stop_speed = 0.0;       // m/s at regulated interior intersections
  double sample_interval = 1.0;  // s
};

/// Deterministic speed profile along a route: from standstill, accelerate at
/// max_accel towards each edge's limit, cruise, and brake at max_decel so
/// the vehicle crosses regulated interior intersections at stop_speed and
/// never enters an edge above its limit. The last edge ends without braking.
/// Sampled at t = 0, dt, 2dt, ... up to the arrival time; each point's
/// interval is the part of [t, t + dt) before arrival.
std::vector<TrajectoryPoint> synth_trajectory(const Route& route, const RoadNetwork& net,
                                              const KinematicProfile& profile = {});

/// Sum of hbefa_co2 * interval over the points (mg).
double trajectory_emissions(std::span<const TrajectoryPoint> points, const EmissionCoeffs& c);

/// CO2 over every trip's trajectory (mg). The OpenMP version evaluates trips
/// in parallel and sums in trip order, matching the serial one bit for bit.
double total_emissions_serial(std::span<const Route> routes, const RoadNetwork& net,
                              const EmissionCoeffs& c, const KinematicProfile& profile = {});
double total_emissions(std::span<const Route> routes, const RoadNetwork& net,
                       const EmissionCoeffs& c, const KinematicProfile& profile = {});

}  // namespace polaris
