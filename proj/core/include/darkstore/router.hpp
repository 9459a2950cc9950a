#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "darkstore/geo.hpp"
#include "darkstore/popgen.hpp"

namespace darkstore {

/// Moves must shorten the path by more than this many minutes to count.
inline constexpr double kImprovementTolerance = 1e-9;

struct RoutingParams {
  /// Per-trip time cap and service radius, in minutes.
  double t_max = 30.0;
  int couriers = 3;
  int trips_per_courier = 5;

  /// D = couriers x trips_per_courier.
  std::size_t daily_trip_cap() const {
    return static_cast<std::size_t>(couriers) *
           static_cast<std::size_t>(trips_per_courier);
  }

  /// Throws std::invalid_argument on a non-positive field.
  void validate() const;
};

/// One element of a multi-trip path: the depot, or a customer stop.
class Waypoint {
 public:
  static Waypoint depot() { return Waypoint(); }
  static Waypoint stop(const Customer& c) { return Waypoint(c); }

  bool is_depot() const { return !customer_.has_value(); }
  const Customer& customer() const { return *customer_; }
  Point location(Point depot) const {
    return customer_ ? customer_->location : depot;
  }

  friend bool operator==(const Waypoint&, const Waypoint&) = default;

 private:
  Waypoint() = default;
  explicit Waypoint(const Customer& c) : customer_(c) {}

  std::optional<Customer> customer_;
};

/// Depot, stops..., Depot, stops..., Depot. Each run of stops between two
/// depot markers is one trip.
struct MultiTripPath {
  std::vector<Waypoint> waypoints;

  std::size_t customer_count() const;
  std::size_t trip_count() const;
};

struct TripPlan {
  std::vector<Customer> stops;
  /// Depot to the last stop; the return leg is not counted.
  double trip_time = 0.0;
  /// Zero-based index of this trip within the path it was cut from.
  std::size_t position = 0;

  std::size_t deliveries() const { return stops.size(); }
  std::vector<CustomerId> customer_ids() const;
};

struct DepotEvaluation {
  Point depot;
  /// Selected trips, best first.
  std::vector<TripPlan> trips;
  std::size_t customers_served = 0;
  /// Time of the full improved path including every return leg.
  double total_path_time = 0.0;
  /// The improved multi-trip path before top-D selection.
  MultiTripPath path;

  std::vector<CustomerId> served_ids() const;
};

/// Customers with travel_time(depot, c) <= t_max, input order preserved.
std::vector<Customer> serviceable_set(Point depot,
                                      std::span<const Customer> customers,
                                      const TrafficModel& model,
                                      const RoutingParams& params);

/// Walks `order`, opening a new trip from the depot whenever the next stop
/// would push the running trip time past t_max. Throws std::invalid_argument
/// if some customer cannot be reached from the depot within t_max.
MultiTripPath split_into_trips(Point depot, std::span<const Customer> order,
                               const TrafficModel& model,
                               const RoutingParams& params);

/// Sum of travel times over every consecutive waypoint pair.
double path_time(const MultiTripPath& path, Point depot,
                 const TrafficModel& model);

/// Cuts a path at its depot markers. Trips keep path order.
std::vector<TripPlan> trips_of(const MultiTripPath& path, Point depot,
                               const TrafficModel& model);

struct TwoOptResult {
  std::vector<Customer> order;
  MultiTripPath path;
  double initial_path_time = 0.0;
  double final_path_time = 0.0;
  std::size_t accepted_moves = 0;
};

/// 2-opt over the customer order: reverse order[i..j], re-split, keep the
/// move when path_time drops by more than kImprovementTolerance. Moves are
/// accepted first-improvement; the search stops after a full pass over all
/// (i, j) pairs accepts nothing.
TwoOptResult two_opt_improve(Point depot, std::span<const Customer> serviceable,
                             const TrafficModel& model,
                             const RoutingParams& params);

/// Keeps the D trips with the most deliveries. Ties go to the shorter trip,
/// then to the earlier one in the path.
DepotEvaluation select_top_trips(const MultiTripPath& path, Point depot,
                                 const TrafficModel& model,
                                 const RoutingParams& params);

/// serviceable_set -> two_opt_improve -> select_top_trips.
DepotEvaluation evaluate_depot(Point depot, std::span<const Customer> customers,
                               const TrafficModel& model,
                               const RoutingParams& params);

}  // namespace darkstore
