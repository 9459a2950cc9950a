#pragma once

#include <span>
#include <vector>

namespace darkstore {

/// A map coordinate in abstract map-units.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

/// Concentric traffic zones around a center. Zone k spans radii
/// (radii[k-1], radii[k]]; the last zone is unbounded. Each zone has a
/// multiplier in minutes per map-unit, innermost first. A model with no
/// radii and one multiplier is uniform traffic.
class TrafficModel {
 public:
  /// Uniform traffic: every map-unit costs `minutes_per_unit`.
  static TrafficModel uniform(double minutes_per_unit = 1.0);

  /// Throws std::invalid_argument unless radii are positive and strictly
  /// ascending, multipliers are positive, and there is exactly one more
  /// multiplier than radii.
  static TrafficModel zoned(Point center, std::vector<double> radii,
                            std::vector<double> multipliers);

  Point center() const { return center_; }
  std::span<const double> radii() const { return radii_; }
  std::span<const double> multipliers() const { return multipliers_; }
  std::size_t zone_count() const { return multipliers_.size(); }
  bool is_uniform() const { return radii_.empty(); }

  double min_multiplier() const;
  double max_multiplier() const;

 private:
  TrafficModel(Point center, std::vector<double> radii,
               std::vector<double> multipliers);

  Point center_;
  std::vector<double> radii_;
  std::vector<double> multipliers_;
};

/// Multiplier of the innermost zone containing `p`. A point on a boundary
/// belongs to the inner zone.
double zone_multiplier(const TrafficModel& model, Point p);

/// Travel time in minutes along the straight segment a-b: the exact line
/// integral of the piecewise-constant zone multiplier. Symmetric bit for bit.
double travel_time(const TrafficModel& model, Point a, Point b);

}  // namespace darkstore
