#include "darkstore/router.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace darkstore {

void RoutingParams::validate() const {
  if (!std::isfinite(t_max) || t_max <= 0.0) {
    throw std::invalid_argument("t_max must be positive");
  }
  if (couriers < 1) throw std::invalid_argument("couriers must be >= 1");
  if (trips_per_courier < 1) {
    throw std::invalid_argument("trips_per_courier must be >= 1");
  }
}

std::size_t MultiTripPath::customer_count() const {
  return static_cast<std::size_t>(std::count_if(
      waypoints.begin(), waypoints.end(),
      [](const Waypoint& w) { return !w.is_depot(); }));
}

std::size_t MultiTripPath::trip_count() const {
  std::size_t trips = 0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (waypoints[i].is_depot() && !waypoints[i - 1].is_depot()) ++trips;
  }
  return trips;
}

std::vector<CustomerId> TripPlan::customer_ids() const {
  std::vector<CustomerId> ids;
  ids.reserve(stops.size());
  for (const Customer& c : stops) ids.push_back(c.id);
  return ids;
}

std::vector<CustomerId> DepotEvaluation::served_ids() const {
  std::vector<CustomerId> ids;
  ids.reserve(customers_served);
  for (const TripPlan& trip : trips) {
    for (const Customer& c : trip.stops) ids.push_back(c.id);
  }
  return ids;
}

namespace {

// Travel times between the depot (node 0) and customers (nodes 1..n). All
// entries come from travel_time(), so sums over them match path_time() bit
// for bit when accumulated in the same order.
class TravelTable {
 public:
  TravelTable(Point depot, std::span<const Customer> customers,
              const TrafficModel& model)
      : size_(customers.size() + 1), times_(size_ * size_, 0.0) {
    std::vector<Point> nodes;
    nodes.reserve(size_);
    nodes.push_back(depot);
    for (const Customer& c : customers) nodes.push_back(c.location);
    for (std::size_t a = 0; a < size_; ++a) {
      for (std::size_t b = a + 1; b < size_; ++b) {
        const double t = travel_time(model, nodes[a], nodes[b]);
        times_[a * size_ + b] = t;
        times_[b * size_ + a] = t;
      }
    }
  }

  double operator()(std::size_t a, std::size_t b) const {
    return times_[a * size_ + b];
  }

 private:
  std::size_t size_;
  std::vector<double> times_;
};

struct SplitState {
  std::size_t current = 0;  // node index, 0 is the depot
  double trip = 0.0;        // running trip time
  double cost = 0.0;        // path time so far, return legs included
};

// The trip-splitting accumulator on node indices.
class SplitEvaluator {
 public:
  SplitEvaluator(const TravelTable& table, double t_max)
      : table_(table), t_max_(t_max) {}

  void advance(SplitState& s, std::size_t node) const {
    double leg = table_(s.current, node);
    if (s.trip + leg > t_max_) {
      s.cost += table_(s.current, 0);
      s.current = 0;
      s.trip = 0.0;
      leg = table_(0, node);
    }
    s.trip += leg;
    s.cost += leg;
    s.current = node;
  }

  double finish(const SplitState& s) const {
    return s.cost + table_(s.current, 0);
  }

  double full_cost(std::span<const std::size_t> order) const {
    SplitState s;
    for (std::size_t node : order) advance(s, node);
    return finish(s);
  }

  // Caches the state after each prefix of `order`.
  void rebuild(std::span<const std::size_t> order) {
    prefix_.assign(order.size() + 1, SplitState{});
    for (std::size_t k = 0; k < order.size(); ++k) {
      prefix_[k + 1] = prefix_[k];
      advance(prefix_[k + 1], order[k]);
    }
    total_ = finish(prefix_.back());
  }

  double total() const { return total_; }

  // Approximate cost of `order` with [i, j] reversed. Reuses the cached
  // prefix and stops as soon as the running trip time re-synchronizes with
  // the unmodified order. Differs from full_cost() only by rounding.
  double screen_reversal(std::span<const std::size_t> order, std::size_t i,
                         std::size_t j) const {
    SplitState s = prefix_[i];
    for (std::size_t k = j + 1; k-- > i;) advance(s, order[k]);
    for (std::size_t k = j + 1; k < order.size(); ++k) {
      advance(s, order[k]);
      if (s.trip == prefix_[k + 1].trip) {
        return s.cost + (total_ - prefix_[k + 1].cost);
      }
    }
    return finish(s);
  }

 private:
  const TravelTable& table_;
  double t_max_;
  std::vector<SplitState> prefix_;
  double total_ = 0.0;
};

void require_serviceable(Point depot, std::span<const Customer> customers,
                         const TrafficModel& model, double t_max) {
  for (const Customer& c : customers) {
    if (travel_time(model, depot, c.location) > t_max) {
      throw std::invalid_argument("customer " + std::to_string(c.id) +
                                  " is outside the service radius");
    }
  }
}

}  // namespace

std::vector<Customer> serviceable_set(Point depot,
                                      std::span<const Customer> customers,
                                      const TrafficModel& model,
                                      const RoutingParams& params) {
  std::vector<Customer> out;
  for (const Customer& c : customers) {
    if (travel_time(model, depot, c.location) <= params.t_max) out.push_back(c);
  }
  return out;
}

MultiTripPath split_into_trips(Point depot, std::span<const Customer> order,
                               const TrafficModel& model,
                               const RoutingParams& params) {
  require_serviceable(depot, order, model, params.t_max);

  MultiTripPath path;
  path.waypoints.reserve(2 * order.size() + 2);
  path.waypoints.push_back(Waypoint::depot());
  Point current = depot;
  double trip = 0.0;
  for (const Customer& c : order) {
    const double leg = travel_time(model, current, c.location);
    if (trip + leg > params.t_max) {
      path.waypoints.push_back(Waypoint::depot());
      trip = travel_time(model, depot, c.location);
    } else {
      trip += leg;
    }
    path.waypoints.push_back(Waypoint::stop(c));
    current = c.location;
  }
  path.waypoints.push_back(Waypoint::depot());
  return path;
}

double path_time(const MultiTripPath& path, Point depot,
                 const TrafficModel& model) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    total += travel_time(model, path.waypoints[i - 1].location(depot),
                         path.waypoints[i].location(depot));
  }
  return total;
}

std::vector<TripPlan> trips_of(const MultiTripPath& path, Point depot,
                               const TrafficModel& model) {
  std::vector<TripPlan> trips;
  TripPlan current;
  Point last = depot;
  auto close = [&] {
    if (current.stops.empty()) return;
    current.position = trips.size();
    trips.push_back(std::move(current));
    current = TripPlan{};
    last = depot;
  };
  for (const Waypoint& w : path.waypoints) {
    if (w.is_depot()) {
      close();
      continue;
    }
    current.trip_time += travel_time(model, last, w.customer().location);
    current.stops.push_back(w.customer());
    last = w.customer().location;
  }
  close();
  return trips;
}

TwoOptResult two_opt_improve(Point depot, std::span<const Customer> serviceable,
                             const TrafficModel& model,
                             const RoutingParams& params) {
  require_serviceable(depot, serviceable, model, params.t_max);

  const std::size_t n = serviceable.size();
  const TravelTable table(depot, serviceable, model);
  SplitEvaluator eval(table, params.t_max);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{1});
  eval.rebuild(order);

  TwoOptResult result;
  result.initial_path_time = eval.total();

  // The screen is exact up to rounding; anything within this slack of an
  // accepted improvement is re-checked with full arithmetic.
  const double slack = 1e-7 * std::max(1.0, eval.total());
  std::vector<std::size_t> candidate;
  bool improved = n > 1;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double current = eval.total();
        const double screened = eval.screen_reversal(order, i, j);
        if (!(screened < current - kImprovementTolerance + slack)) continue;
        candidate = order;
        std::reverse(candidate.begin() + static_cast<std::ptrdiff_t>(i),
                     candidate.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        if (eval.full_cost(candidate) < current - kImprovementTolerance) {
          order.swap(candidate);
          eval.rebuild(order);
          ++result.accepted_moves;
          improved = true;
        }
      }
    }
  }

  result.order.reserve(n);
  for (std::size_t node : order) result.order.push_back(serviceable[node - 1]);
  result.path = split_into_trips(depot, result.order, model, params);
  result.final_path_time = eval.total();
  return result;
}

DepotEvaluation select_top_trips(const MultiTripPath& path, Point depot,
                                 const TrafficModel& model,
                                 const RoutingParams& params) {
  std::vector<TripPlan> trips = trips_of(path, depot, model);
  std::stable_sort(trips.begin(), trips.end(),
                   [](const TripPlan& a, const TripPlan& b) {
                     if (a.deliveries() != b.deliveries()) {
                       return a.deliveries() > b.deliveries();
                     }
                     return a.trip_time < b.trip_time;
                   });
  trips.resize(std::min(trips.size(), params.daily_trip_cap()));

  DepotEvaluation out;
  out.depot = depot;
  for (const TripPlan& t : trips) out.customers_served += t.deliveries();
  out.trips = std::move(trips);
  out.total_path_time = path_time(path, depot, model);
  out.path = path;
  return out;
}

DepotEvaluation evaluate_depot(Point depot, std::span<const Customer> customers,
                               const TrafficModel& model,
                               const RoutingParams& params) {
  const std::vector<Customer> reachable =
      serviceable_set(depot, customers, model, params);
  const TwoOptResult improved = two_opt_improve(depot, reachable, model, params);
  return select_top_trips(improved.path, depot, model, params);
}

}  // namespace darkstore
