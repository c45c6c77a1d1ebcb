#include "polaris/evaluation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "polaris/errors.hpp"
#include "polaris/kernels.hpp"
#include "polaris/text.hpp"

namespace polaris {

double highly_popular_fraction(std::span<const Route> routes,
                               std::span<const PopularityClass> classes,
                               PopularityCounting counting) {
  std::size_t high = 0, total = 0;
  if (counting == PopularityCounting::Traversals) {
    for (const auto& r : routes) {
      for (EdgeId e : r.edges) {
        ++total;
        if (classes[e] == PopularityClass::High) ++high;
      }
    }
  } else {
    std::vector<EdgeId> unique;
    for (const auto& r : routes) unique.insert(unique.end(), r.edges.begin(), r.edges.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    total = unique.size();
    for (EdgeId e : unique) {
      if (classes[e] == PopularityClass::High) ++high;
    }
  }
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(high) / static_cast<double>(total);
}

Fraction regulated_fraction(std::span<const Route> routes, const RoadNetwork& net) {
  Fraction f;
  for (const auto& r : routes) {
    // Interior nodes are the heads of all but the last edge.
    for (std::size_t i = 0; i + 1 < r.edges.size(); ++i) {
      ++f.denominator;
      if (net.node(net.edge(r.edges[i]).to).regulation == Regulation::Regulated) {
        ++f.numerator;
      }
    }
  }
  return f;
}

double route_overlap(const Route& a, const Route& b) {
  std::vector<EdgeId> x(a.edges), y(b.edges);
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  std::sort(y.begin(), y.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());
  if (x.empty() && y.empty()) return 1.0;
  std::size_t common = 0;
  for (std::size_t i = 0, j = 0; i < x.size() && j < y.size();) {
    if (x[i] == y[j]) {
      ++common;
      ++i;
      ++j;
    } else if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(x.size() + y.size() - common);
}

double mean_pairwise_overlap(std::span<const Route> routes) {
  if (routes.size() < 2) return 0.0;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    for (std::size_t j = i + 1; j < routes.size(); ++j) {
      sum += route_overlap(routes[i], routes[j]);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

std::vector<EmissionCoeffs> read_coefficients(std::istream& in, const std::string& source) {
  std::vector<EmissionCoeffs> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto f = split_fields(line);
    if (f.empty()) continue;
    if (f.size() != 8 || f[0] != "CO2") {
      throw ParseError(fmt::format("{}:{}: expected 'CO2 <class> c0 c1 c2 c3 c4 c5'", source, lineno));
    }
    EmissionCoeffs c;
    c.vehicle_class = std::string(f[1]);
    for (std::size_t i = 0; i < 6; ++i) {
      if (!parse_number(f[i + 2], c.c[i]) || !std::isfinite(c.c[i])) {
        throw ParseError(fmt::format("{}:{}: bad coefficient '{}'", source, lineno, f[i + 2]));
      }
    }
    out.push_back(std::move(c));
  }
  if (out.empty()) throw ParseError(source + ": no CO2 coefficient lines");
  return out;
}

std::vector<EmissionCoeffs> load_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open coefficients file " + path);
  return read_coefficients(in, path);
}

EmissionCoeffs select_coefficients(const std::vector<EmissionCoeffs>& all,
                                   const std::string& vehicle_class) {
  if (all.empty()) throw ParseError("no emission coefficients loaded");
  if (vehicle_class.empty()) return all.front();
  for (const auto& c : all) {
    if (c.vehicle_class == vehicle_class) return c;
  }
  throw ParseError("no coefficients for vehicle class " + vehicle_class);
}

double emission_polynomial(double s, double a, const EmissionCoeffs& k) {
  const auto& c = k.c;
  return c[0] + c[1] * s * a + c[2] * s * a * a + c[3] * s + c[4] * s * s + c[5] * s * s * s;
}

double hbefa_co2(const TrajectoryPoint& pt, const EmissionCoeffs& c) {
  return std::max(0.0, emission_polynomial(pt.speed, pt.acceleration, c));
}

namespace {

struct Segment {
  double start = 0.0;     // s
  double duration = 0.0;  // s
  double v0 = 0.0;        // speed at start
  double accel = 0.0;
};

// Appends constant-acceleration pieces for one edge; returns the exit speed.
double plan_edge(std::vector<Segment>& out, double& clock, double length, double limit,
                 double v0, double exit_cap, const KinematicProfile& p) {
  const double A = p.max_accel, D = p.max_decel;
  auto push = [&](double duration, double v, double a) {
    if (duration <= 0.0) return;
    out.push_back({clock, duration, v, a});
    clock += duration;
  };
  const double vc = limit;
  const double v1 = std::min(exit_cap, vc);
  const double d_acc = (vc * vc - v0 * v0) / (2.0 * A);
  const double d_dec = (vc * vc - v1 * v1) / (2.0 * D);
  if (d_acc + d_dec <= length) {
    push((vc - v0) / A, v0, A);
    push((length - d_acc - d_dec) / vc, vc, 0.0);
    push((vc - v1) / D, vc, -D);
    return v1;
  }
  const double vp = std::sqrt((2.0 * A * D * length + D * v0 * v0 + A * v1 * v1) / (A + D));
  if (vp >= v0 && vp >= v1) {
    push((vp - v0) / A, v0, A);
    push((vp - v1) / D, vp, -D);
    return v1;
  }
  if (v0 < v1) {
    // Too short to reach the exit speed: accelerate throughout.
    const double v_end = std::sqrt(v0 * v0 + 2.0 * A * length);
    push((v_end - v0) / A, v0, A);
    return v_end;
  }
  // Too short to brake at max_decel: brake harder over the whole edge.
  const double decel = (v0 * v0 - v1 * v1) / (2.0 * length);
  push((v0 - v1) / decel, v0, -decel);
  return v1;
}

}  // namespace

std::vector<TrajectoryPoint> synth_trajectory(const Route& route, const RoadNetwork& net,
                                              const KinematicProfile& profile) {
  std::vector<TrajectoryPoint> points;
  if (route.edges.empty()) return points;

  std::vector<Segment> segments;
  double clock = 0.0;
  double speed = 0.0;
  for (std::size_t i = 0; i < route.edges.size(); ++i) {
    const auto& e = net.edge(route.edges[i]);
    double exit_cap = e.speed_limit;
    if (i + 1 < route.edges.size()) {
      const auto& next = net.edge(route.edges[i + 1]);
      exit_cap = net.node(e.to).regulation == Regulation::Regulated
                     ? profile.stop_speed
                     : std::min(e.speed_limit, next.speed_limit);
    }
    speed = plan_edge(segments, clock, e.length, e.speed_limit, std::min(speed, e.speed_limit),
                      exit_cap, profile);
  }
  const double arrival = clock;

  constexpr double kTimeSlack = 1e-9;
  const double dt = profile.sample_interval;
  std::size_t seg = 0;
  for (std::size_t j = 0;; ++j) {
    const double t = static_cast<double>(j) * dt;
    if (t > arrival + kTimeSlack) break;
    while (seg + 1 < segments.size() && segments[seg + 1].start <= t + kTimeSlack) ++seg;
    const auto& s = segments[seg];
    const double local = std::min(t - s.start, s.duration);
    TrajectoryPoint pt;
    pt.time = t;
    pt.speed = std::max(0.0, s.v0 + s.accel * local);
    pt.acceleration = s.accel;
    pt.interval = std::clamp(arrival - t, 0.0, dt);
    points.push_back(pt);
  }
  return points;
}

double trajectory_emissions(std::span<const TrajectoryPoint> points, const EmissionCoeffs& c) {
  double sum = 0.0;
  for (const auto& p : points) sum += hbefa_co2(p, c) * p.interval;
  return sum;
}

double total_emissions_serial(std::span<const Route> routes, const RoadNetwork& net,
                              const EmissionCoeffs& c, const KinematicProfile& profile) {
  double sum = 0.0;
  for (const auto& r : routes) sum += trajectory_emissions(synth_trajectory(r, net, profile), c);
  return sum;
}

double total_emissions(std::span<const Route> routes, const RoadNetwork& net,
                       const EmissionCoeffs& c, const KinematicProfile& profile) {
  std::vector<double> per_trip(routes.size(), 0.0);
  parallel_for(routes.size(), [&](std::size_t i) {
    per_trip[i] = trajectory_emissions(synth_trajectory(routes[i], net, profile), c);
  });
  double sum = 0.0;
  for (double x : per_trip) sum += x;
  return sum;
}

}  // namespace polaris
