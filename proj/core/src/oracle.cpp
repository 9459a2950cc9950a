#include "darkstore/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace darkstore {

namespace {

MultiTripPath path_from_trips(std::span<const TripPlan> trips) {
  MultiTripPath path;
  path.waypoints.push_back(Waypoint::depot());
  for (const TripPlan& trip : trips) {
    for (const Customer& c : trip.stops) path.waypoints.push_back(Waypoint::stop(c));
    path.waypoints.push_back(Waypoint::depot());
  }
  if (path.waypoints.size() == 1) path.waypoints.push_back(Waypoint::depot());
  return path;
}

}  // namespace

OracleResult exact_best_service(Point depot, std::span<const Customer> customers,
                                const TrafficModel& model,
                                const RoutingParams& params) {
  if (customers.size() > kOracleMaxCustomers) {
    throw OracleSizeError("oracle accepts at most " +
                          std::to_string(kOracleMaxCustomers) +
                          " customers, got " + std::to_string(customers.size()));
  }
  params.validate();

  const std::vector<Customer> pool = serviceable_set(depot, customers, model, params);
  const std::size_t n = pool.size();

  OracleResult best;
  best.witness.waypoints = {Waypoint::depot(), Waypoint::depot()};

  std::vector<std::size_t> perm;
  std::vector<Customer> order;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    perm.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) perm.push_back(k);
    }
    do {
      order.clear();
      for (std::size_t k : perm) order.push_back(pool[k]);
      const MultiTripPath split = split_into_trips(depot, order, model, params);
      const DepotEvaluation plan = select_top_trips(split, depot, model, params);

      if (plan.customers_served < best.best_customers_served) continue;
      const MultiTripPath witness = path_from_trips(plan.trips);
      const double time = path_time(witness, depot, model);
      if (plan.customers_served > best.best_customers_served ||
          time < best.best_total_path_time) {
        best.best_customers_served = plan.customers_served;
        best.best_total_path_time = time;
        best.witness = witness;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return best;
}

OracleDepot exact_best_depot(std::span<const Point> candidates,
                             std::span<const Customer> customers,
                             const TrafficModel& model,
                             const RoutingParams& params) {
  if (candidates.empty()) {
    throw std::invalid_argument("exact_best_depot needs at least one candidate");
  }
  if (customers.size() > kOracleMaxCustomers) {
    throw OracleSizeError("oracle accepts at most " +
                          std::to_string(kOracleMaxCustomers) +
                          " customers, got " + std::to_string(customers.size()));
  }
  OracleDepot best{candidates.front(),
                   exact_best_service(candidates.front(), customers, model, params)};
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    OracleResult r = exact_best_service(candidates[k], customers, model, params);
    if (r.best_customers_served > best.result.best_customers_served) {
      best = {candidates[k], std::move(r)};
    }
  }
  return best;
}

}  // namespace darkstore
